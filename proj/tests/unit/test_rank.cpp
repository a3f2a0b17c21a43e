#include "pilab/rank.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace pilab::linalg;

namespace {

SparseMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int rank_target) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<std::vector<std::int64_t>> left(rows, std::vector<std::int64_t>(static_cast<std::size_t>(rank_target)));
  std::vector<std::vector<std::int64_t>> right(static_cast<std::size_t>(rank_target), std::vector<std::int64_t>(cols));
  for (auto& r : left) for (auto& v : r) v = coef(rng);
  for (auto& r : right) for (auto& v : r) v = coef(rng);
  std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (int k = 0; k < rank_target; ++k) a[i][j] += left[i][static_cast<std::size_t>(k)] * right[static_cast<std::size_t>(k)][j];
  return SparseMatrix::from_dense(a);
}

}  // namespace

TEST_CASE("small ranks") {
  CHECK(exact_rank(SparseMatrix::from_dense({{1, 2}, {2, 4}})) == 1);
  CHECK(exact_rank(SparseMatrix::from_dense({{1, 0, 1}, {0, 1, 1}, {1, 1, 2}})) == 2);
  CHECK(exact_rank(SparseMatrix::from_dense({{0, 0}, {0, 0}})) == 0);
  CHECK(rank(SparseMatrix::from_dense({{2, 1}, {1, 2}})).rank == 2);
}

TEST_CASE("modular and exact ranks agree on random low-rank matrices") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    const auto rows = std::uniform_int_distribution<std::size_t>(1, 25)(rng);
    const auto cols = std::uniform_int_distribution<std::size_t>(1, 25)(rng);
    const int target = std::uniform_int_distribution<int>(0, 8)(rng);
    const auto a = random_matrix(rng, rows, cols, target);
    const auto exact = exact_rank(a);
    CHECK(exact <= static_cast<std::size_t>(target));
    CHECK(modular_rank(a, random_prime(1, 0), 1) == exact);
    RankOptions opts;
    opts.cross_check_exact = true;
    const auto cert = rank(a, opts);
    CHECK(cert.rank == exact);
  }
}

TEST_CASE("a certificate records its method") {
  const auto a = SparseMatrix::from_dense({{1, 1}, {1, -1}});
  const auto mod = rank(a);
  CHECK(mod.method == Method::Modular);
  CHECK(mod.primes.size() == 2);
  CHECK(mod.primes[0] != mod.primes[1]);
  RankOptions exact;
  exact.exact = true;
  CHECK(rank(a, exact).method == Method::ExactRational);
}

TEST_CASE("random primes are deterministic 62-bit primes") {
  for (int i = 0; i < 4; ++i) {
    const auto p = random_prime(99, i);
    CHECK(is_prime_u64(p));
    CHECK(p > (std::uint64_t{1} << 61));
    CHECK(p < (std::uint64_t{1} << 62));
    CHECK(p == random_prime(99, i));
  }
  CHECK_FALSE(is_prime_u64(1));
  CHECK(is_prime_u64(2305843009213693951ULL));
}

TEST_CASE("column basis and components") {
  const auto a = SparseMatrix::from_dense({{1, 2, 0, 0}, {2, 4, 0, 0}, {0, 0, 1, 1}});
  CHECK(column_basis(a) == std::vector<std::size_t>{0, 2});
  CHECK(components(a).size() == 2);
}
