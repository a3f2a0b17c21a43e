#pragma once

// Explicit nonvanishing witnesses for the cocharacter of the unital
// extension: tableaux whose symmetrizers survive a chosen substitution, and a
// sequence of such shapes whose Phi approaches Phi0(beta) + 1.

#include "pilab/algebra.hpp"
#include "pilab/monomial.hpp"
#include "pilab/partition.hpp"
#include "pilab/polyspace.hpp"
#include "pilab/real.hpp"
#include "pilab/reptheory.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace pilab::witness {

/// FirstRowLong: lambda = (j, (m-1)r + W_r, r, 1) with j >= lambda_2.
/// SecondRowLong: lambda = ((m-1)r + W_r, j, r, 1) with lambda_1 > j >= r.
enum class Form { FirstRowLong, SecondRowLong };

std::string to_string(Form form);

class Tableau {
 public:
  /// rows[i] lists the entries of row i left to right; entries are 1..n.
  explicit Tableau(std::vector<std::vector<int>> rows);

  const rep::Partition& shape() const { return shape_; }
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  std::vector<std::vector<int>> columns() const;
  int size() const { return shape_.size(); }
  std::string to_string() const;

 private:
  std::vector<std::vector<int>> rows_;
  rep::Partition shape_;
};

struct TableauWitness {
  Tableau tableau;
  std::vector<algebra::BasisElement> substitution;  // value of x_1..x_n
  int n0 = 0;                                        // m r + W_r + 1
  std::vector<int> b_positions;                      // j_1..j_r
  mpz_class expected;                                // j! r! (n0 - r - 1)!
};

/// Shape lambda of the form for (m, word, r, j); throws DomainError if the
/// inequalities of the form fail.
rep::Partition family_shape(int m, const words::WordSpec& word, int r, int j, Form form);

TableauWitness build_tableau(int m, const words::WordSpec& word, int r, int j, Form form);

struct SymmetrizerOptions {
  bool full_double_sum = false;
  std::size_t double_sum_limit = 1000000;  // |R| |C|
  std::optional<poly::Bracketing> bracketing;  // default: left-normed
};

/// e_T applied to a monomial in x_1..x_n and evaluated at the substitution.
/// Row-constant substitutions use |R| times the signed column sum; others
/// need the full double sum within the size limit.
algebra::AlgebraElement evaluate_symmetrizer(const Tableau& tableau,
                                             const std::vector<algebra::BasisElement>& substitution,
                                             const algebra::AlgebraSpec& spec, const SymmetrizerOptions& options = {});

/// Family inequalities for a four-row shape (lambda_1, lambda_2, R, 1).
struct Admissibility {
  bool ok = false;
  Form form = Form::FirstRowLong;
  int R = 0;
};
Admissibility family_admissible(const rep::Partition& lambda, int m, const words::WordSpec& word);

enum class Schedule { Doubling, Dense };

struct WitnessPoint {
  int index = 0;
  int r = 0;
  long long n = 0;
  rep::Partition lambda;
  Real phi_gap;
  bool shape_ok = false;
  std::string branch;      // which row the inserted row became
  std::string diagnostic;  // why a point fell back to the base shape
};

struct WitnessSequence {
  std::vector<WitnessPoint> points;
  Real target;        // Phi0(beta) + 1
  int k = 0;
  int q_min = 0;
  int q_max = 0;
  int i0 = 0;         // first index from which every point is shape_ok with phi_gap < eps (0 if none)
  Real max_gap_after_i0;
  long long max_step = 0;       // max n_{i+1} - n_i over consecutive shape_ok points
  long long c2 = 0;             // max |n_i - k n| + 1
  long long c_bound = 0;        // 2 c2 + k (m + 1)
  Real slope_constant;          // max_r |W_r - r alpha|
  std::string note;
};

struct SequenceOptions {
  Schedule schedule = Schedule::Doubling;
  int r_start = 1;
  double insertion_share = 0.25;  // part of eps given to the row insertion
};

WitnessSequence approach_sequence(int m, const words::WordSpec& word, double eps, int count,
                                 const SequenceOptions& options = {});

struct SmallFamilyCheck {
  rep::Partition lambda;
  Form form = Form::FirstRowLong;
  int r = 0;
  int j = 0;
  std::int64_t multiplicity = 0;
};

/// Every family shape of size <= n_max, with its multiplicity in the
/// computed cocharacter of the unital extension.
std::vector<SmallFamilyCheck> small_family_check(int m, const words::WordSpec& word, int n_max,
                                                 const poly::EngineOptions& options = {});

struct UpperBoundAudit {
  int n = 0;
  Real max_phi;
  std::string argmax;
  Real bound;   // Phi0(beta) + 1 + delta
  Real slack;   // bound - max_phi
  bool pass = false;
};

UpperBoundAudit upper_bound_audit(const rep::CocharacterTable& table, const algebra::AlgebraSpec& spec, double delta);

}  // namespace pilab::witness
