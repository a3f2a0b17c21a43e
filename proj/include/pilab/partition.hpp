#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace pilab::rep {

class Partition {
 public:
  Partition() = default;
  /// Trailing zeros are dropped; throws DomainError unless weakly decreasing
  /// and non-negative.
  explicit Partition(std::vector<int> parts);
  /// "3+2+1"; "0" or "" is the empty partition.
  static Partition parse(std::string_view text);

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return n_; }
  int height() const { return static_cast<int>(parts_.size()); }
  /// Part i (0-based), zero beyond the height.
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  Partition conjugate() const;
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

/// Partitions of n with at most max_parts parts, in reverse lexicographic
/// order: (n), (n-1,1), (n-2,2), ...
std::vector<Partition> partitions(int n, int max_parts = 1 << 30);

/// lambda dominates mu (same size assumed).
bool dominates(const Partition& lambda, const Partition& mu);

}  // namespace pilab::rep
