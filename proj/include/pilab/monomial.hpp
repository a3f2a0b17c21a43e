#pragma once

// Multilinear nonassociative monomials: a binary bracketing tree whose leaves,
// read left to right, carry a permutation of the variables x_1..x_n.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pilab::poly {

inline constexpr int kMaxDegree = 16;

/// A bracketing in postfix form: 0 pushes the next leaf, 1 multiplies the two
/// topmost entries.
class Bracketing {
 public:
  static Bracketing leaf();
  static Bracketing join(const Bracketing& left, const Bracketing& right);
  /// ((..(x x) x)..) x
  static Bracketing left_normed(int leaves);

  int leaves() const { return leaves_; }
  std::span<const std::uint8_t> postfix() const { return postfix_; }
  bool is_left_normed() const;

  /// "(x1x2)x3" style rendering for the given leaf labels (0-based variables).
  std::string render(std::span<const std::uint8_t> perm) const;

  friend bool operator==(const Bracketing&, const Bracketing&) = default;
  friend auto operator<=>(const Bracketing&, const Bracketing&) = default;

 private:
  std::vector<std::uint8_t> postfix_;
  int leaves_ = 0;
};

/// All Catalan(n-1) bracketings of n leaves; the left-normed comb comes first.
std::vector<Bracketing> all_bracketings(int n);

std::uint64_t catalan(int k);
std::uint64_t factorial_u64(int k);

struct Monomial {
  std::vector<std::uint8_t> perm;  // perm[t] = 0-based variable at leaf t
  Bracketing tree;

  int degree() const { return tree.leaves(); }
  std::string to_string() const { return tree.render(perm); }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Parses "x1(x2x3)", "((x2x1)x3)". Every x_i must appear once and the
/// variables must be exactly x_1..x_n.
Monomial parse_monomial(std::string_view text);

/// Evaluates a postfix tree. `value_of(leaf_index)` yields the leaf value,
/// `mul(a, b)` the product; a std::nullopt product stands for zero and is
/// absorbing.
template <class T, class ValueOf, class Mul>
std::optional<T> evaluate_tree(std::span<const std::uint8_t> postfix, ValueOf&& value_of, Mul&& mul) {
  std::array<std::optional<T>, kMaxDegree> stack;
  int top = 0;
  int leaf = 0;
  for (const std::uint8_t op : postfix) {
    if (op == 0) {
      stack[top++] = value_of(leaf++);
    } else {
      std::optional<T> right = std::move(stack[--top]);
      std::optional<T>& left = stack[top - 1];
      if (left && right) {
        left = mul(*left, *right);
      } else {
        left.reset();
      }
    }
  }
  return std::move(stack[0]);
}

}  // namespace pilab::poly
