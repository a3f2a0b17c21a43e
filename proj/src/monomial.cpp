#include "pilab/monomial.hpp"

#include "pilab/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace pilab::poly {

Bracketing Bracketing::leaf() {
  Bracketing b;
  b.postfix_ = {0};
  b.leaves_ = 1;
  return b;
}

Bracketing Bracketing::join(const Bracketing& left, const Bracketing& right) {
  Bracketing b;
  b.postfix_.reserve(left.postfix_.size() + right.postfix_.size() + 1);
  b.postfix_.insert(b.postfix_.end(), left.postfix_.begin(), left.postfix_.end());
  b.postfix_.insert(b.postfix_.end(), right.postfix_.begin(), right.postfix_.end());
  b.postfix_.push_back(1);
  b.leaves_ = left.leaves_ + right.leaves_;
  if (b.leaves_ > kMaxDegree) throw DomainError("bracketing exceeds the maximum degree");
  return b;
}

Bracketing Bracketing::left_normed(int leaves) {
  if (leaves < 1) throw DomainError("a bracketing needs at least one leaf");
  Bracketing b = leaf();
  for (int i = 1; i < leaves; ++i) b = join(b, leaf());
  return b;
}

bool Bracketing::is_left_normed() const {
  // comb postfix: 0 0 1 0 1 0 1 ...
  if (postfix_.empty() || postfix_[0] != 0) return false;
  for (std::size_t i = 1; i < postfix_.size(); ++i) {
    const std::uint8_t expected = (i % 2 == 1) ? 0 : 1;
    if (postfix_[i] != expected) return false;
  }
  return true;
}

std::string Bracketing::render(std::span<const std::uint8_t> perm) const {
  struct Piece {
    std::string text;
    bool compound;
  };
  std::vector<Piece> stack;
  std::size_t leaf = 0;
  for (auto op : postfix_) {
    if (op == 0) {
      const int var = leaf < perm.size() ? perm[leaf] + 1 : static_cast<int>(leaf) + 1;
      stack.push_back({"x" + std::to_string(var), false});
      ++leaf;
    } else {
      Piece right = std::move(stack.back());
      stack.pop_back();
      Piece left = std::move(stack.back());
      stack.pop_back();
      std::string text = (left.compound ? "(" + left.text + ")" : left.text) +
                         (right.compound ? "(" + right.text + ")" : right.text);
      stack.push_back({std::move(text), true});
    }
  }
  return stack.empty() ? std::string{} : stack.back().text;
}

std::vector<Bracketing> all_bracketings(int n) {
  if (n < 1 || n > kMaxDegree) throw DomainError("bracketing size out of range");
  std::vector<std::vector<Bracketing>> by_size(static_cast<std::size_t>(n) + 1);
  by_size[1].push_back(Bracketing::leaf());
  for (int size = 2; size <= n; ++size) {
    // right part of size 1 first, so the comb comes first
    for (int right = 1; right < size; ++right) {
      const int left = size - right;
      for (const auto& l : by_size[static_cast<std::size_t>(left)]) {
        for (const auto& r : by_size[static_cast<std::size_t>(right)]) {
          by_size[static_cast<std::size_t>(size)].push_back(Bracketing::join(l, r));
        }
      }
    }
  }
  return std::move(by_size[static_cast<std::size_t>(n)]);
}

std::uint64_t catalan(int k) {
  std::uint64_t c = 1;
  for (int i = 0; i < k; ++i) c = c * 2 * (2 * static_cast<std::uint64_t>(i) + 1) / (static_cast<std::uint64_t>(i) + 2);
  return c;
}

std::uint64_t factorial_u64(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

Monomial parse_monomial(std::string_view text) {
  std::size_t pos = 0;
  std::vector<std::uint8_t> perm;

  auto fail = [&](const std::string& what) -> void {
    throw DomainError("cannot parse monomial '" + std::string(text) + "': " + what);
  };

  std::function<Bracketing()> sequence;
  std::function<Bracketing()> factor = [&]() -> Bracketing {
    if (pos >= text.size()) fail("unexpected end");
    if (text[pos] == '(') {
      ++pos;
      Bracketing inner = sequence();
      if (pos >= text.size() || text[pos] != ')') fail("missing ')'");
      ++pos;
      return inner;
    }
    if (text[pos] != 'x') fail("expected 'x' or '('");
    ++pos;
    int value = 0;
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + (text[pos] - '0');
      ++pos;
    }
    if (pos == start || value < 1 || value > kMaxDegree) fail("bad variable index");
    perm.push_back(static_cast<std::uint8_t>(value - 1));
    return Bracketing::leaf();
  };
  // juxtaposition is left-associative: x1x2x3 = (x1x2)x3
  sequence = [&]() -> Bracketing {
    Bracketing acc = factor();
    while (pos < text.size() && text[pos] != ')') acc = Bracketing::join(acc, factor());
    return acc;
  };

  Bracketing tree = sequence();
  if (pos != text.size()) fail("trailing characters");
  std::vector<std::uint8_t> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) fail("variables must be x1..xn, each exactly once");
  }
  return Monomial{std::move(perm), std::move(tree)};
}

}  // namespace pilab::poly
