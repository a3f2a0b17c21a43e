#include "pilab/error.hpp"
#include "pilab/partition.hpp"

#include <catch_amalgamated.hpp>

using namespace pilab;
using namespace pilab::rep;

TEST_CASE("partitions normalize and render") {
  const Partition p({3, 2, 1, 0, 0});
  CHECK(p.height() == 3);
  CHECK(p.size() == 6);
  CHECK(p.to_string() == "3+2+1");
  CHECK(Partition::parse("3+2+1") == p);
  CHECK(p[5] == 0);
  CHECK(Partition::parse("").size() == 0);
  CHECK_THROWS_AS(Partition({1, 2}), DomainError);
  CHECK_THROWS_AS(Partition({2, -1}), DomainError);
  CHECK_THROWS_AS(Partition::parse("3+x"), DomainError);
}

TEST_CASE("conjugation is an involution") {
  CHECK(Partition({4, 2, 1}).conjugate() == Partition({3, 2, 1, 1}));
  for (int n = 1; n <= 9; ++n) {
    for (const auto& p : partitions(n)) CHECK(p.conjugate().conjugate() == p);
  }
}

TEST_CASE("partition counts and order") {
  const std::vector<std::size_t> counts{1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int n = 0; n <= 10; ++n) CHECK(partitions(n).size() == counts[static_cast<std::size_t>(n)]);
  const auto five = partitions(5);
  CHECK(five.front() == Partition({5}));
  CHECK(five[1] == Partition({4, 1}));
  CHECK(five.back() == Partition({1, 1, 1, 1, 1}));
  for (std::size_t i = 1; i < five.size(); ++i) CHECK(five[i] < five[i - 1]);
  for (const auto& p : partitions(8, 3)) CHECK(p.height() <= 3);
  CHECK(partitions(8, 3).size() == 10);
}

TEST_CASE("dominance") {
  CHECK(dominates(Partition({3, 1}), Partition({2, 2})));
  CHECK_FALSE(dominates(Partition({2, 2}), Partition({3, 1})));
  CHECK_FALSE(dominates(Partition({3, 1, 1, 1}), Partition({2, 2, 2})));
  CHECK_FALSE(dominates(Partition({2, 2, 2}), Partition({3, 1, 1, 1})));
  for (int n = 1; n <= 7; ++n) {
    for (const auto& p : partitions(n)) {
      CHECK(dominates(Partition({n}), p));
      CHECK(dominates(p, p));
      CHECK(dominates(p.conjugate(), Partition(std::vector<int>(static_cast<std::size_t>(n), 1))));
    }
  }
}
