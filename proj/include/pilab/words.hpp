#pragma once

// Infinite binary words: periodic words and lower mechanical (Sturmian) words.
//
// A mechanical word of slope alpha and intercept rho is
//   w_i = floor((i+1)*alpha + rho) - floor(i*alpha + rho),  i >= 1.
// Rational slopes with small denominators are materialized as one period of
// that word, so every rational word in the system is a Periodic spec.

#include "pilab/real.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pilab::words {

using Bits = std::vector<std::uint8_t>;

/// Largest denominator for which a rational mechanical word is stored as its
/// period. Larger denominators keep exact rational floors instead.
inline constexpr std::size_t kMaxMaterializedPeriod = 4096;

/// An exact rational or a high-precision real. Reals remember the text they
/// were parsed from so specs round-trip through config files.
class Slope {
 public:
  Slope() : value_(mpq_class(0)) {}
  explicit Slope(mpq_class q);
  Slope(Real value, std::string source);

  bool is_rational() const { return std::holds_alternative<mpq_class>(value_); }
  const mpq_class& rational() const;
  Real real() const;
  std::string to_string() const;

  /// floor(i * slope + offset) for i >= 0. Real slopes go through a guarded
  /// MPFR evaluation that throws EngineError when the argument sits within
  /// rounding distance of an integer.
  mpz_class floor_affine(std::uint64_t i, const Slope& offset) const;

 private:
  struct RealValue {
    Real value;
    std::string source;
  };
  std::variant<mpq_class, RealValue> value_;
};

/// Parses "0.25", "3/8", "(3-sqrt(5))/2" and similar +-*/ sqrt expressions.
/// Expressions without an irrational square root stay exact.
Slope parse_slope(std::string_view text);

struct Periodic {
  Bits pattern;
};

struct Mechanical {
  Slope alpha;
  Slope rho;
};

class WordSpec {
 public:
  static WordSpec periodic(Bits pattern);
  /// Rational alpha with denominator <= kMaxMaterializedPeriod (and rational
  /// rho) yields the Periodic spec of one period of the mechanical word.
  static WordSpec mechanical(Slope alpha, Slope rho = Slope{});

  bool is_periodic() const { return std::holds_alternative<Periodic>(kind_); }
  const Periodic& as_periodic() const { return std::get<Periodic>(kind_); }
  const Mechanical& as_mechanical() const { return std::get<Mechanical>(kind_); }

  /// Letter w_i for i >= 1.
  std::uint8_t letter(std::uint64_t i) const;

  /// Slope pi(w): exact for periodic words, alpha for mechanical ones.
  Slope slope() const;

  /// Upper bound on the number of distinct factors of any length, if finite.
  /// Periodic: the period; rational mechanical: the denominator.
  std::optional<std::uint64_t> period_bound() const;

  std::string to_string() const;

 private:
  explicit WordSpec(std::variant<Periodic, Mechanical> kind) : kind_(std::move(kind)) {}
  std::variant<Periodic, Mechanical> kind_;
};

/// "periodic:01101" or "mechanical:alpha=<expr>[,rho=<expr>]".
WordSpec parse_word_spec(std::string_view text);

/// w_1 ... w_n.
Bits generate_prefix(const WordSpec& spec, std::size_t n);

std::string to_ascii(const Bits& bits);
Bits from_ascii(std::string_view text);

struct FactorSet {
  std::size_t length = 0;
  std::set<Bits> factors;
  bool certified = false;
  std::size_t target = 0;          // theoretical complexity used for certification
  std::size_t scanned_prefix = 0;  // longest prefix examined
};

struct Complexity {
  std::size_t count = 0;
  FactorSet factor_set;
};

/// Distinct length-L factors. Periodic words are enumerated exactly from the
/// cyclic pattern. Mechanical words scan prefixes 4(L+2), 8(L+2), ... until the
/// count is stable across two rounds and equals L+1 (or the denominator for a
/// rational slope); exhausting `prefix_budget` yields certified = false.
Complexity complexity(const WordSpec& spec, std::size_t L,
                      std::size_t prefix_budget = std::size_t{1} << 20);

/// (w_1 + ... + w_n) / n, exact.
mpq_class slope_partial(const WordSpec& spec, std::size_t n);

}  // namespace pilab::words
