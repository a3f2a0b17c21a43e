#include "pilab/algebra.hpp"
#include "pilab/error.hpp"
#include "pilab/monomial.hpp"
#include "pilab/polyspace.hpp"

#include <catch_amalgamated.hpp>

using namespace pilab;
using namespace pilab::algebra;

namespace {

AlgebraSpec periodic01(bool unital = false) { return AlgebraSpec(2, words::parse_word_spec("periodic:01"), unital); }

std::vector<BasisElement> atoms_up_to(const AlgebraSpec& spec, int levels) {
  std::vector<BasisElement> out{BasisElement::a(), BasisElement::b()};
  if (spec.unital) out.push_back(BasisElement::one());
  for (int i = 1; i <= levels; ++i) {
    for (int j = 1; j <= spec.level_size(i); ++j) out.push_back(BasisElement::z(i, j));
  }
  return out;
}

}  // namespace

TEST_CASE("multiplication table") {
  const auto spec = periodic01();
  CHECK(spec.level_size(1) == 2);
  CHECK(spec.level_size(2) == 3);
  CHECK(multiply_basis(BasisElement::z(1, 1), BasisElement::a(), spec) == AlgebraElement(BasisElement::z(1, 2)));
  CHECK(multiply_basis(BasisElement::z(1, 2), BasisElement::a(), spec).is_zero());
  CHECK(multiply_basis(BasisElement::z(1, 2), BasisElement::b(), spec) == AlgebraElement(BasisElement::z(2, 1)));
  CHECK(multiply_basis(BasisElement::z(1, 1), BasisElement::b(), spec).is_zero());
  CHECK(multiply_basis(BasisElement::z(2, 3), BasisElement::b(), spec) == AlgebraElement(BasisElement::z(3, 1)));
  CHECK(multiply_basis(BasisElement::a(), BasisElement::z(1, 1), spec).is_zero());
  CHECK(multiply_basis(BasisElement::z(1, 1), BasisElement::z(1, 1), spec).is_zero());
  CHECK(multiply_basis(BasisElement::a(), BasisElement::b(), spec).is_zero());
}

TEST_CASE("the unit is two-sided only in the extension") {
  const auto u = periodic01(true);
  for (const auto& x : atoms_up_to(u, 3)) {
    CHECK(multiply_basis(BasisElement::one(), x, u) == AlgebraElement(x));
    CHECK(multiply_basis(x, BasisElement::one(), u) == AlgebraElement(x));
  }
  CHECK_THROWS_AS(validate(BasisElement::one(), periodic01()), DomainError);
}

TEST_CASE("a level walk follows the word") {
  const auto spec = periodic01();
  const auto letters = letters_from("ab" "aab" "ab");
  const auto p = left_normed_product(BasisElement::z(1, 1), letters, spec);
  CHECK(p == AlgebraElement(BasisElement::z(4, 1)));
  CHECK(left_normed_product(BasisElement::z(1, 1), letters_from("aa"), spec).is_zero());
}

TEST_CASE("basis atoms parse and validate") {
  CHECK(parse_basis("z_2_3") == BasisElement::z(2, 3));
  CHECK(parse_basis("1") == BasisElement::one());
  CHECK_THROWS_AS(parse_basis("z_2"), DomainError);
  CHECK_THROWS_AS(validate(BasisElement::z(1, 3), periodic01()), DomainError);
  CHECK_THROWS_AS(validate(BasisElement::z(0, 1), periodic01()), DomainError);
  CHECK_THROWS_AS(AlgebraSpec(1, words::parse_word_spec("periodic:01"), false), DomainError);
}

TEST_CASE("products are bilinear") {
  const auto spec = periodic01();
  AlgebraElement x(BasisElement::z(1, 1), 2);
  x.add_term(BasisElement::z(2, 3), 3);
  AlgebraElement y(BasisElement::a(), 5);
  y.add_term(BasisElement::b(), 7);
  AlgebraElement expected(BasisElement::z(1, 2), 10);
  expected.add_term(BasisElement::z(3, 1), 21);
  CHECK(multiply(x, y, spec) == expected);
}

TEST_CASE("x1(x2x3) vanishes on every substitution at degree 3") {
  for (const std::string w : {"periodic:01", "mechanical:alpha=(3-sqrt(5))/2"}) {
    const AlgebraSpec spec(2, words::parse_word_spec(w), false);
    const auto atoms = atoms_up_to(spec, 6);
    const auto mono = poly::parse_monomial("x1(x2x3)");
    for (const auto& x : atoms)
      for (const auto& y : atoms)
        for (const auto& z : atoms) {
          const std::vector<BasisElement> v{x, y, z};
          REQUIRE(evaluate_monomial(mono, v, spec).is_zero());
        }
  }
}

TEST_CASE("cyclic quotient closes the levels") {
  const auto spec = periodic01();
  const auto q = cyclic_quotient(spec);
  CHECK(q.dimension() == 2 + 2 + 3);
  const int last = *q.find("z_2_3");
  CHECK(q.name(q.multiply(last, *q.find("b"))) == "z_1_1");
  CHECK(q.is_left_annihilator(*q.find("a")));
  const auto round = StructureAlgebra::from_json(q.to_json());
  for (int x = 0; x < q.dimension(); ++x)
    for (int y = 0; y < q.dimension(); ++y) CHECK(round.multiply(x, y) == q.multiply(x, y));
  CHECK_THROWS_AS(cyclic_quotient(AlgebraSpec(2, words::parse_word_spec("mechanical:alpha=sqrt(2)-1"), false)),
                  DomainError);
}

TEST_CASE("cyclic quotient codimensions agree at small degree") {
  const auto spec = periodic01();
  const auto q = cyclic_quotient(spec);
  for (int n = 1; n <= 4; ++n) {
    CHECK(poly::structure_codimension(q, n, poly::Mode::All).rank == poly::codimension(n, spec).value);
  }
}
