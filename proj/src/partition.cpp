#include "pilab/partition.hpp"

#include "pilab/error.hpp"

#include <charconv>

namespace pilab::rep {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw DomainError("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("partition parts must be weakly decreasing");
    n_ += parts_[i];
  }
}

Partition Partition::parse(std::string_view text) {
  std::vector<int> parts;
  if (text.empty() || text == "0") return Partition{};
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find('+', start), text.size());
    int v = 0;
    const auto piece = text.substr(start, end - start);
    const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (ec != std::errc{} || ptr != piece.data() + piece.size()) {
      throw DomainError("bad partition '" + std::string(text) + "'");
    }
    parts.push_back(v);
    start = end + 1;
  }
  return Partition(std::move(parts));
}

Partition Partition::conjugate() const {
  std::vector<int> c(parts_.empty() ? 0 : static_cast<std::size_t>(parts_[0]), 0);
  for (const int p : parts_) {
    for (int i = 0; i < p; ++i) ++c[static_cast<std::size_t>(i)];
  }
  return Partition(std::move(c));
}

std::string Partition::to_string() const {
  if (parts_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "+" : "") + std::to_string(parts_[i]);
  return s;
}

std::vector<Partition> partitions(int n, int max_parts) {
  if (n < 0) throw DomainError("cannot partition a negative number");
  std::vector<Partition> out;
  std::vector<int> current;
  auto recurse = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    if (static_cast<int>(current.size()) == max_parts) return;
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      current.push_back(p);
      self(self, remaining - p, p);
      current.pop_back();
    }
  };
  recurse(recurse, n, n);
  return out;
}

bool dominates(const Partition& lambda, const Partition& mu) {
  int a = 0;
  int b = 0;
  const auto len = static_cast<std::size_t>(std::max(lambda.height(), mu.height()));
  for (std::size_t i = 0; i < len; ++i) {
    a += lambda[i];
    b += mu[i];
    if (a < b) return false;
  }
  return true;
}

}  // namespace pilab::rep
