#pragma once

// Symmetric group combinatorics and cocharacters of A(m,w) and A#.

#include "pilab/partition.hpp"
#include "pilab/polyspace.hpp"
#include "pilab/real.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pilab::rep {

/// deg chi_lambda = n! / prod(hook lengths).
mpz_class hook_degree(const Partition& lambda);

/// Semistandard tableaux of shape lambda and content mu (any composition).
mpz_class kostka(const Partition& lambda, std::span<const int> content);
inline mpz_class kostka(const Partition& lambda, const Partition& mu) { return kostka(lambda, mu.parts()); }

struct CocharacterEntry {
  Partition lambda;
  std::int64_t multiplicity = 0;
  mpz_class degree;
  Real phi;
  std::size_t homogeneous_dim = 0;  // dim W_lambda modulo identities
  linalg::RankCertificate certificate;
};

struct CocharacterTable {
  int n = 0;
  int d = 0;
  std::vector<CocharacterEntry> entries;  // every partition of n with at most d parts
  std::int64_t colength = 0;
  mpz_class c_n_check;                    // sum m_lambda deg chi_lambda

  std::int64_t multiplicity(const Partition& lambda) const;
};

/// 3 for A(m,w), 4 for the unital extension.
int default_strip(const algebra::AlgebraSpec& spec);

/// Inverts dim W_mu = sum_lambda m_lambda K_{lambda,mu} over partitions with at
/// most d parts. Throws EngineError if a multiplicity comes out negative.
CocharacterTable cocharacter(const poly::MultilinearSystem& system, int d, int workers = 1);
CocharacterTable cocharacter(int n, int d, const algebra::AlgebraSpec& spec, const poly::EngineOptions& options = {});

struct AuditRow {
  std::string name;
  bool applicable = true;
  bool pass = true;
  std::string detail;
};

/// Finite-n checks of the multiplicity, colength, strip and ratio bounds.
std::vector<AuditRow> audits(const CocharacterTable& table, const poly::MultilinearSystem& system,
                             const algebra::AlgebraSpec& spec, double ratio_eps = 0.1);

/// Max lambda_3 / lambda_1 over nonzero multiplicities (0 when none has three rows).
Real max_third_row_ratio(const CocharacterTable& table);

struct PolynomialFit {
  int T = 2;
  Real alpha;  // max over n of dims[n] / n^T
};

/// dims[i] is the dimension at n = i + 1.
PolynomialFit fit_polynomial(const std::vector<std::size_t>& dims, int T);

/// Checks unital[i] <= alpha (n+1)^(T+d+1) at n = i + 1.
AuditRow unit_extension_audit(const PolynomialFit& fit, const std::vector<std::size_t>& unital, int d);

}  // namespace pilab::rep
