#pragma once

// Multilinear and multihomogeneous polynomial spaces modulo the identities of
// A(m,w) or its unital extension, computed as ranks of evaluation matrices.
//
// Rows are monomials, columns are pairs (substitution, output basis atom); the
// entry is 1 when the monomial evaluates to that atom. Every evaluation of a
// monomial on basis atoms is zero or a single atom, so the rank of this 0/1
// matrix is the dimension of the space modulo identities.

#include "pilab/algebra.hpp"
#include "pilab/monomial.hpp"
#include "pilab/rank.hpp"
#include "pilab/words.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace pilab::poly {

enum class Mode { All, LeftNormed };

struct Caps {
  int enumerate_all = 8;
  int enumerate_left_normed = 9;
  int unital_codim = 7;
  int nonunital_codim = 9;
  bool override_caps = false;
};

std::vector<Monomial> enumerate_multilinear(int n, Mode mode, const Caps& caps = {});

/// The monomials of degree n in a compact layout: permutations in
/// lexicographic order, bracketings inner, so rows sharing the variable at
/// the leftmost leaf are contiguous.
class MonomialTable {
 public:
  MonomialTable(int n, Mode mode, const Caps& caps = {});

  int degree() const { return n_; }
  Mode mode() const { return mode_; }
  std::size_t size() const { return perms_.size() / static_cast<std::size_t>(n_) * trees_.size(); }
  std::size_t tree_count() const { return trees_.size(); }
  const Bracketing& tree(std::size_t id) const { return trees_[id]; }

  std::size_t tree_id(std::size_t row) const { return row % trees_.size(); }
  std::size_t perm_id(std::size_t row) const { return row / trees_.size(); }
  std::span<const std::uint8_t> perm(std::size_t row) const {
    return {perms_.data() + perm_id(row) * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
  }
  std::size_t row_of(std::size_t perm_id, std::size_t tree_id) const { return perm_id * trees_.size() + tree_id; }
  /// Rows whose leftmost leaf carries variable v (0-based).
  std::pair<std::size_t, std::size_t> leading_range(int v) const;
  Monomial monomial(std::size_t row) const;

 private:
  int n_;
  Mode mode_;
  std::vector<Bracketing> trees_;
  std::vector<std::uint8_t> perms_;
};

/// Lexicographic rank of a permutation of 0..n-1.
std::size_t permutation_rank(std::span<const std::uint8_t> perm);

struct SubstitutionColumn {
  std::vector<algebra::BasisElement> values;  // Z atoms sit at relative level 1
  words::Bits window;                         // word factor from the Z level; empty without Z

  std::string to_string() const;
};

/// Every substitution of basis atoms with at most one Z atom, the Z atom taken
/// over every certified word factor of length n+1 and every legal index.
/// Throws EngineError when the factor set cannot be certified.
std::vector<SubstitutionColumn> certified_substitutions(int n, const algebra::AlgebraSpec& spec,
                                                        std::size_t extra_window = 0);

/// Value of a monomial row on a substitution (nullopt for zero).
std::optional<algebra::BasisElement> evaluate_row(const MonomialTable& table, std::size_t row,
                                                  const SubstitutionColumn& column, int m);

enum class ColumnPlan {
  Reduced,    // one column per distinguishing class; unital runs use column bases of smaller degrees
  Certified,  // every certified substitution, evaluated literally
};

struct EngineOptions {
  Caps caps;
  ColumnPlan plan = ColumnPlan::Reduced;
  std::optional<Mode> rows;      // default: All when unital, LeftNormed otherwise
  std::size_t extra_window = 0;  // lengthen word windows (stability audits)
  linalg::RankOptions rank;
  int workers = 1;
};

Mode default_mode(const algebra::AlgebraSpec& spec);

/// Rough memory need of a codimension run, in bytes.
std::size_t estimate_bytes(int n, const algebra::AlgebraSpec& spec, const EngineOptions& options = {});

/// Throws EngineError when n exceeds the caps for this spec and row mode.
void check_caps(int n, const algebra::AlgebraSpec& spec, const EngineOptions& options);

/// The evaluation matrix of degree n, built once and queried for the
/// multilinear rank and for any multihomogeneous orbit-sum rank.
class MultilinearSystem {
 public:
  MultilinearSystem(int n, const algebra::AlgebraSpec& spec, const EngineOptions& options = {});

  int degree() const { return table_.degree(); }
  const MonomialTable& monomials() const { return table_; }
  const std::vector<SubstitutionColumn>& substitutions() const { return substitutions_; }
  const linalg::SparseMatrix& matrix() const { return matrix_; }
  /// Substitution behind each matrix column.
  const std::vector<std::uint32_t>& column_source() const { return column_source_; }

  linalg::RankCertificate codimension() const;
  /// Rank of the S_mu orbit sums of the rows, mu a composition of n (zero
  /// parts are ignored).
  linalg::RankCertificate homogeneous(std::span<const int> mu) const;
  /// The row aggregation matrix used by homogeneous().
  linalg::SparseMatrix orbit_matrix(std::span<const int> mu) const;

  /// "% rows cols nnz" followed by 1-based "row col value" lines.
  void export_coordinates(std::ostream& out) const;

 private:
  void build_direct(const algebra::AlgebraSpec& spec);
  void build_left_normed(const algebra::AlgebraSpec& spec);
  void build_unital(const algebra::AlgebraSpec& spec);

  EngineOptions options_;
  MonomialTable table_;
  std::vector<SubstitutionColumn> substitutions_;
  linalg::SparseMatrix matrix_;
  std::vector<std::uint32_t> column_source_;
};

struct CodimResult {
  int n = 0;
  std::size_t value = 0;
  linalg::RankCertificate certificate;
  double seconds = 0;
};

CodimResult codimension(int n, const algebra::AlgebraSpec& spec, const EngineOptions& options = {});
linalg::RankCertificate homogeneous_dim(std::span<const int> mu, const algebra::AlgebraSpec& spec,
                                        const EngineOptions& options = {});

struct WndResult {
  std::size_t value = 0;
  std::size_t bound = 0;  // d (m+1) n Comp_w(n)
};

/// Dimension of the multihomogeneous polynomials of degree n in d variables
/// modulo identities: the sum of homogeneous_dim over all multidegrees
/// (weak compositions of n into d slots).
WndResult w_nd_dim(int n, int d, const algebra::AlgebraSpec& spec, const EngineOptions& options = {});
WndResult w_nd_dim(const MultilinearSystem& system, int d, const algebra::AlgebraSpec& spec);

/// Codimension of a finite structure-constant algebra by brute force over
/// all substitutions of basis atoms.
linalg::RankCertificate structure_codimension(const algebra::StructureAlgebra& algebra, int n, Mode mode,
                                              const EngineOptions& options = {});

}  // namespace pilab::poly
