#pragma once

// The word algebra A(m,w) and its unital extension.
//
// Basis: a, b and z(i,j) for levels i >= 1 and 1 <= j <= k_i = m + w_i.
// Nonzero products of basis atoms:
//   z(i,j) * a   = z(i,j+1)   for j < k_i
//   z(i,k_i) * b = z(i+1,1)
// plus the unit laws when the unit is adjoined.

#include "pilab/monomial.hpp"
#include "pilab/words.hpp"

#include <gmpxx.h>
#include <json.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pilab::algebra {

enum class Tag : std::uint8_t { One, A, B, Z };

struct BasisElement {
  Tag tag = Tag::A;
  std::int32_t level = 0;  // Z only
  std::int32_t index = 0;  // Z only

  static constexpr BasisElement one() { return {Tag::One, 0, 0}; }
  static constexpr BasisElement a() { return {Tag::A, 0, 0}; }
  static constexpr BasisElement b() { return {Tag::B, 0, 0}; }
  static constexpr BasisElement z(std::int32_t level, std::int32_t index) { return {Tag::Z, level, index}; }

  bool is_z() const { return tag == Tag::Z; }
  bool is_letter() const { return tag == Tag::A || tag == Tag::B; }
  std::string to_string() const;

  friend constexpr bool operator==(const BasisElement&, const BasisElement&) = default;
  friend constexpr auto operator<=>(const BasisElement&, const BasisElement&) = default;
};

BasisElement parse_basis(std::string_view text);  // "1", "a", "b", "z_2_1"

class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(BasisElement x, mpq_class coefficient = 1);

  void add_term(const BasisElement& x, const mpq_class& coefficient);
  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator*=(const mpq_class& scalar);

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<BasisElement, mpq_class>& terms() const { return terms_; }
  /// Coefficient of x (zero when absent).
  mpq_class coefficient(const BasisElement& x) const;
  std::string to_string() const;

  friend bool operator==(const AlgebraElement& l, const AlgebraElement& r) { return l.terms_ == r.terms_; }

 private:
  std::map<BasisElement, mpq_class> terms_;
};

struct AlgebraSpec {
  int m = 2;
  words::WordSpec word = words::WordSpec::periodic({0});
  bool unital = false;

  AlgebraSpec() = default;
  AlgebraSpec(int m, words::WordSpec word, bool unital);

  /// k_i = m + w_i.
  int level_size(std::int64_t level) const;
  std::string to_string() const;
};

/// Level sizes k_1..k_L of a window of the word, indexed from relative level 1.
/// Evaluation of a substitution with its Z atom at relative level 1 only
/// queries levels inside the window.
class LevelWindow {
 public:
  LevelWindow(int m, std::span<const std::uint8_t> factor);
  int size_at(std::int32_t level) const;
  std::int32_t levels() const { return static_cast<std::int32_t>(sizes_.size()); }

 private:
  std::vector<std::int32_t> sizes_;
};

/// Product of two basis atoms given level sizes; std::nullopt is zero. No
/// validation.
template <class Sizes>
inline std::optional<BasisElement> multiply_atoms(const BasisElement& x, const BasisElement& y, const Sizes& k) {
  if (x.tag == Tag::One) return y;
  if (y.tag == Tag::One) return x;
  if (x.tag != Tag::Z) return std::nullopt;
  if (y.tag == Tag::A) {
    if (x.index < k.size_at(x.level)) return BasisElement::z(x.level, x.index + 1);
    return std::nullopt;
  }
  if (y.tag == Tag::B) {
    if (x.index == k.size_at(x.level)) return BasisElement::z(x.level + 1, 1);
    return std::nullopt;
  }
  return std::nullopt;
}

/// Throws DomainError unless x is a basis atom of the spec's algebra.
void validate(const BasisElement& x, const AlgebraSpec& spec);

AlgebraElement multiply_basis(const BasisElement& x, const BasisElement& y, const AlgebraSpec& spec);
AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y, const AlgebraSpec& spec);

enum class Letter : std::uint8_t { A, B };
std::vector<Letter> letters_from(std::string_view text);  // "aab" -> a,a,b

/// ((start * l_1) * l_2) ...
AlgebraElement left_normed_product(const BasisElement& start, std::span<const Letter> letters,
                                   const AlgebraSpec& spec);

AlgebraElement evaluate_monomial(const poly::Monomial& mono, std::span<const BasisElement> values,
                                 const AlgebraSpec& spec);

/// A finite-dimensional algebra given by a monomial multiplication table:
/// every product of basis atoms is another atom or zero.
class StructureAlgebra {
 public:
  static constexpr int kZero = -1;

  StructureAlgebra(std::vector<std::string> names, std::vector<int> table);

  int dimension() const { return static_cast<int>(names_.size()); }
  const std::string& name(int atom) const { return names_.at(static_cast<std::size_t>(atom)); }
  std::optional<int> find(std::string_view name) const;
  /// Atom index or kZero.
  int multiply(int x, int y) const { return table_[static_cast<std::size_t>(x * dimension() + y)]; }
  /// Atoms whose left multiplication is identically zero.
  bool is_left_annihilator(int x) const { return left_zero_[static_cast<std::size_t>(x)] != 0; }

  /// {"basis": [...], "products": {"x*y": "atom", ...}} with zero products omitted.
  nlohmann::json to_json() const;
  static StructureAlgebra from_json(const nlohmann::json& j);

 private:
  std::vector<std::string> names_;
  std::vector<int> table_;
  std::vector<std::uint8_t> left_zero_;
};

/// Experimental finite quotient of A(m,w) for a periodic word of period T:
/// levels are identified modulo T, so z(T,k_T) * b = z(1,1). Includes the
/// unit when the spec is unital. Nothing guarantees that it satisfies the same
/// identities as A(m,w); that is only ever tested.
StructureAlgebra cyclic_quotient(const AlgebraSpec& spec);

inline constexpr std::string_view kCyclicQuotientWarning =
    "experimental: the cyclic quotient is not known to be PI-equivalent to A(m,w); "
    "agreement is checked only up to the computed degree";

}  // namespace pilab::algebra
