#pragma once

// Rank of sparse integer matrices: exact over Q, or modulo two random 62-bit
// primes with agreement required.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pilab::linalg {

/// Compressed sparse columns. Empty `values` means every stored entry is 1.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> col_ptr{0};
  std::vector<std::uint32_t> row_idx;
  std::vector<std::int64_t> values;

  std::size_t nonzeros() const { return row_idx.size(); }
  std::int64_t value(std::size_t k) const { return values.empty() ? 1 : values[k]; }

  /// Appends a column; rows must be strictly increasing.
  void push_column(const std::vector<std::uint32_t>& rows_of_col);
  void push_column(const std::vector<std::uint32_t>& rows_of_col, const std::vector<std::int64_t>& vals);

  /// Dense row-major copy, for tests and tiny inputs.
  std::vector<std::vector<std::int64_t>> dense() const;
  static SparseMatrix from_dense(const std::vector<std::vector<std::int64_t>>& a);
};

enum class Method { ExactRational, Modular };

struct RankCertificate {
  std::size_t rank = 0;
  Method method = Method::Modular;
  std::vector<std::uint64_t> primes;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t nonzeros = 0;
  std::size_t components = 0;
  bool escalated = false;  // the primes disagreed and the exact rank was used

  std::string method_string() const;
};

struct RankOptions {
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  bool exact = false;             // exact rational elimination only
  bool cross_check_exact = false; // run both and require agreement
  std::size_t dense_limit = std::size_t{1} << 22;  // entries; above this, project first
  int workers = 1;
};

RankCertificate rank(const SparseMatrix& a, const RankOptions& options = {});

/// Exact rank over Q by fraction-free sparse elimination.
std::size_t exact_rank(const SparseMatrix& a);

/// Rank modulo p (p < 2^62 prime); random projection draws from `seed`.
std::size_t modular_rank(const SparseMatrix& a, std::uint64_t p, std::uint64_t seed,
                         std::size_t dense_limit = std::size_t{1} << 22);

/// Lexicographically first maximal set of independent columns.
std::vector<std::size_t> column_basis(const SparseMatrix& a, const RankOptions& options = {});

/// The `which`-th distinct random prime in (2^61, 2^62) for a seed.
std::uint64_t random_prime(std::uint64_t seed, int which);
bool is_prime_u64(std::uint64_t n);

/// Splits into connected components of the bipartite row/column graph.
/// Returns per component the original column indices and the local matrix.
struct Component {
  std::vector<std::size_t> columns;
  SparseMatrix matrix;
};
std::vector<Component> components(const SparseMatrix& a);

}  // namespace pilab::linalg
