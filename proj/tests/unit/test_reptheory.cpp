#include "pilab/error.hpp"
#include "pilab/reptheory.hpp"

#include <catch_amalgamated.hpp>

using namespace pilab;
using namespace pilab::rep;

namespace {

const char* kGolden = "mechanical:alpha=(3-sqrt(5))/2";

algebra::AlgebraSpec spec_of(const std::string& word, bool unital) {
  return algebra::AlgebraSpec(2, words::parse_word_spec(word), unital);
}

mpz_class factorial(int n) {
  mpz_class f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Semistandard tableaux counted by brute force filling, row by row.
long long count_ssyt(const Partition& shape, const std::vector<int>& content) {
  std::vector<std::vector<int>> t;
  for (const int p : shape.parts()) t.emplace_back(static_cast<std::size_t>(p), 0);
  std::vector<int> left(content);
  long long count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t r = 0; r < t.size(); ++r)
    for (std::size_t c = 0; c < t[r].size(); ++c) cells.emplace_back(r, c);
  auto fill = [&](auto&& self, std::size_t k) -> void {
    if (k == cells.size()) {
      ++count;
      return;
    }
    const auto [r, c] = cells[k];
    for (int v = 1; v <= static_cast<int>(left.size()); ++v) {
      if (left[static_cast<std::size_t>(v - 1)] == 0) continue;
      if (c > 0 && t[r][c - 1] > v) continue;
      if (r > 0 && t[r - 1][c] >= v) continue;
      t[r][c] = v;
      --left[static_cast<std::size_t>(v - 1)];
      self(self, k + 1);
      ++left[static_cast<std::size_t>(v - 1)];
    }
    t[r][c] = 0;
  };
  fill(fill, 0);
  return count;
}

}  // namespace

TEST_CASE("hook lengths") {
  CHECK(hook_degree(Partition({3, 2, 1})) == 16);
  CHECK(hook_degree(Partition({4, 1, 1, 1})) == 20);
  CHECK(hook_degree(Partition({5})) == 1);
  for (int n = 1; n <= 10; ++n) {
    mpz_class sum = 0;
    for (const auto& p : partitions(n)) sum += hook_degree(p) * hook_degree(p);
    CHECK(sum == factorial(n));
  }
}

TEST_CASE("Kostka numbers against brute-force tableaux") {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& lambda : partitions(n)) {
      for (const auto& mu : partitions(n)) {
        CHECK(kostka(lambda, mu.parts()).get_si() == count_ssyt(lambda, mu.parts()));
      }
    }
  }
  const std::vector<int> weak{0, 2, 0, 1};
  CHECK(kostka(Partition({2, 1}), weak) == 1);
  CHECK(kostka(Partition({3}), std::vector<int>(1, 2)) == 0);
}

TEST_CASE("Kostka matrix is unitriangular for dominance") {
  for (int n = 1; n <= 8; ++n) {
    for (const auto& lambda : partitions(n)) {
      CHECK(kostka(lambda, lambda.parts()) == 1);
      for (const auto& mu : partitions(n)) {
        if (!dominates(lambda, mu)) CHECK(kostka(lambda, mu.parts()) == 0);
      }
    }
    const std::vector<int> all_ones(static_cast<std::size_t>(n), 1);
    for (const auto& lambda : partitions(n)) CHECK(kostka(lambda, all_ones) == hook_degree(lambda));
  }
}

TEST_CASE("cocharacters reproduce codimensions and colengths") {
  for (const std::string w : {"periodic:01", kGolden}) {
    for (const bool unital : {false, true}) {
      const auto spec = spec_of(w, unital);
      const int top = unital ? 5 : 7;
      for (int n = 1; n <= top; ++n) {
        const poly::MultilinearSystem system(n, spec);
        const auto table = cocharacter(system, default_strip(spec) + 1);
        INFO(w << " unital=" << unital << " n=" << n);
        CHECK(table.c_n_check == mpz_class(static_cast<unsigned long>(system.codimension().rank)));
        std::int64_t sum = 0;
        for (const auto& e : table.entries) {
          CHECK(e.multiplicity >= 0);
          sum += e.multiplicity;
        }
        CHECK(sum == table.colength);
      }
    }
  }
}

TEST_CASE("cocharacter shapes of the non-unital algebra") {
  const auto spec = spec_of(kGolden, false);
  for (int n = 1; n <= 7; ++n) {
    const auto table = cocharacter(n, 4, spec);
    for (const auto& e : table.entries) {
      if (e.multiplicity == 0) continue;
      CHECK(e.lambda.height() <= 3);
      if (e.lambda.height() == 3) CHECK(e.lambda[2] == 1);
    }
  }
  CHECK(cocharacter(3, 4, spec).multiplicity(Partition({2, 1})) == 2);
}

TEST_CASE("frozen unital colengths and multiplicities") {
  const auto spec = spec_of("periodic:01", true);
  const std::vector<std::int64_t> colength{1, 2, 7, 21, 52};
  for (int n = 1; n <= 5; ++n) {
    const auto table = cocharacter(n, 5, spec);
    CHECK(table.colength == colength[static_cast<std::size_t>(n - 1)]);
    for (const auto& e : table.entries) {
      if (e.lambda.height() == 5) CHECK(e.multiplicity == 0);
    }
  }
  CHECK(cocharacter(4, 5, spec).multiplicity(Partition({1, 1, 1, 1})) == 1);
  CHECK(cocharacter(5, 5, spec).multiplicity(Partition({2, 1, 1, 1})) == 3);
  CHECK_THROWS_AS(cocharacter(4, 3, spec).multiplicity(Partition({1, 1, 1, 1})), DomainError);
}

TEST_CASE("audits on the unital extension") {
  const auto spec = spec_of("periodic:01", true);
  const poly::MultilinearSystem system(5, spec);
  const auto table = cocharacter(system, 5);
  for (const auto& a : audits(table, system, spec)) {
    INFO(a.name << ": " << a.detail);
    CHECK(a.pass);
  }
  CHECK(max_third_row_ratio(table) == Real("0.5"));
}

TEST_CASE("homogeneous bound audit reports the degree five excess") {
  const auto spec = spec_of(kGolden, false);
  const poly::MultilinearSystem system(5, spec);
  const auto table = cocharacter(system, 4);
  bool seen = false;
  for (const auto& a : audits(table, system, spec)) {
    if (a.name != "homogeneous_bound") continue;
    seen = true;
    CHECK_FALSE(a.pass);
    CHECK(a.detail == "dim W_n^(4)=840 bound=360");
  }
  CHECK(seen);
}

TEST_CASE("polynomial fit and unit extension audit") {
  const std::vector<std::size_t> dims{3, 9, 27, 78};
  const auto fit = fit_polynomial(dims, 2);
  CHECK(fit.alpha == Real(78) / 16);
  const auto ok = unit_extension_audit(fit, {3, 9, 46, 192}, 3);
  CHECK(ok.pass);
  const auto bad = unit_extension_audit(fit, {1000000}, 0);
  CHECK_FALSE(bad.pass);
}
