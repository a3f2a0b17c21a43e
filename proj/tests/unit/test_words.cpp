#include "pilab/error.hpp"
#include "pilab/words.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace pilab;
using namespace pilab::words;

namespace {

Bits reference_mechanical(long double alpha, std::size_t n) {
  Bits out;
  for (std::size_t i = 1; i <= n; ++i) {
    out.push_back(static_cast<std::uint8_t>(std::floor((i + 1) * alpha) - std::floor(i * alpha)));
  }
  return out;
}

}  // namespace

TEST_CASE("slopes parse exactly or as reals") {
  CHECK(parse_slope("0.25").rational() == mpq_class(1, 4));
  CHECK(parse_slope("0.0125").rational() == mpq_class(1, 80));
  CHECK(parse_slope("3/8").rational() == mpq_class(3, 8));
  CHECK(parse_slope("1 - 2/5").rational() == mpq_class(3, 5));
  CHECK(parse_slope("sqrt(4)/4").rational() == mpq_class(1, 2));
  const auto golden = parse_slope("(3-sqrt(5))/2");
  CHECK_FALSE(golden.is_rational());
  CHECK(std::abs(golden.real().convert_to<double>() - 0.3819660112501051) < 1e-15);
  CHECK_THROWS_AS(parse_slope("0.3 +"), DomainError);
  CHECK_THROWS_AS(parse_slope("sqrt(-1)"), DomainError);
}

TEST_CASE("periodic words repeat their pattern") {
  const auto w = parse_word_spec("periodic:01101");
  CHECK(to_ascii(generate_prefix(w, 12)) == "011010110101");
  CHECK(w.slope().rational() == mpq_class(3, 5));
  CHECK(w.period_bound() == 5u);
  CHECK(slope_partial(w, 10) == mpq_class(3, 5));
}

TEST_CASE("periodic complexity never exceeds the period") {
  for (const std::string pattern : {"01", "001", "01101", "0001011"}) {
    const auto w = WordSpec::periodic(from_ascii(pattern));
    for (std::size_t L = 1; L <= 12; ++L) {
      const auto c = complexity(w, L);
      CHECK(c.count <= pattern.size());
      CHECK(c.factor_set.certified);
    }
  }
}

TEST_CASE("golden mechanical word matches the floor formula and is Sturmian") {
  const auto w = parse_word_spec("mechanical:alpha=(3-sqrt(5))/2,rho=0");
  const long double alpha = (3.0L - std::sqrt(5.0L)) / 2;
  CHECK(generate_prefix(w, 200) == reference_mechanical(alpha, 200));
  CHECK(to_ascii(generate_prefix(w, 13)) == "0100101001001");
  for (std::size_t L = 1; L <= 20; ++L) {
    const auto c = complexity(w, L);
    CHECK(c.count == L + 1);
    CHECK(c.factor_set.certified);
    CHECK(c.factor_set.factors.size() == c.factor_set.target);
  }
}

TEST_CASE("other irrational slopes are Sturmian too") {
  for (const std::string alpha : {"sqrt(2)-1", "(sqrt(5)-1)/2", "sqrt(3)/3"}) {
    const auto w = parse_word_spec("mechanical:alpha=" + alpha);
    for (std::size_t L = 1; L <= 10; ++L) CHECK(complexity(w, L).count == L + 1);
  }
}

TEST_CASE("rational mechanical slopes materialize as one period") {
  const auto w = parse_word_spec("mechanical:alpha=2/5");
  REQUIRE(w.is_periodic());
  CHECK(w.as_periodic().pattern.size() == 5);
  CHECK(w.slope().rational() == mpq_class(2, 5));
  CHECK(generate_prefix(w, 40) == reference_mechanical(0.4L, 40));
  for (std::size_t L = 1; L <= 10; ++L) CHECK(complexity(w, L).count <= 5);
}

TEST_CASE("partial slopes converge to the slope") {
  const auto w = parse_word_spec("mechanical:alpha=(3-sqrt(5))/2");
  const double alpha = w.slope().real().convert_to<double>();
  for (std::size_t n : {10u, 100u, 1000u}) {
    const double partial = slope_partial(w, n).get_d();
    CHECK(std::abs(partial - alpha) <= 1.0 / static_cast<double>(n) + 1e-12);
  }
}

TEST_CASE("malformed word specs are domain errors") {
  CHECK_THROWS_AS(parse_word_spec("periodic:"), DomainError);
  CHECK_THROWS_AS(parse_word_spec("periodic:012"), DomainError);
  CHECK_THROWS_AS(parse_word_spec("mechanical:alpha=1.5"), DomainError);
  CHECK_THROWS_AS(parse_word_spec("mechanical:alpha=0.3,rho=1"), DomainError);
  CHECK_THROWS_AS(parse_word_spec("sturmian:0.3"), DomainError);
}

TEST_CASE("spec strings round-trip") {
  for (const std::string text : {"periodic:01101", "mechanical:alpha=(3-sqrt(5))/2,rho=0"}) {
    const auto w = parse_word_spec(text);
    const auto again = parse_word_spec(w.to_string());
    CHECK(generate_prefix(w, 100) == generate_prefix(again, 100));
  }
}
