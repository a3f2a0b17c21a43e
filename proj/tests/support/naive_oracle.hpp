#pragma once

// Brute-force reference for the codimension and multihomogeneous dimensions
// of A(m,w) and its unital extension. Shares no code with the library: its
// own word letters, product table, monomial enumeration and exact rank.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

struct Atom {
  int kind = 0;  // 0 unit, 1 a, 2 b, 3 z
  int level = 0;
  int index = 0;
  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Model {
  int m = 2;
  bool unital = false;
  std::vector<int> letters;  // letters[i] = w_i, index 0 unused
  std::vector<Atom> atoms;

  int size(int level) const { return m + letters[static_cast<std::size_t>(level)]; }

  int find(const Atom& x) const {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (atoms[i] == x) return static_cast<int>(i);
    }
    return -1;
  }

  // -1 for zero or a product that leaves the modelled levels.
  int mul(int x, int y) const {
    const Atom& p = atoms[static_cast<std::size_t>(x)];
    const Atom& q = atoms[static_cast<std::size_t>(y)];
    if (p.kind == 0) return y;
    if (q.kind == 0) return x;
    if (p.kind != 3) return -1;
    if (q.kind == 1 && p.index < size(p.level)) return find({3, p.level, p.index + 1});
    if (q.kind == 2 && p.index == size(p.level)) return find({3, p.level + 1, 1});
    return -1;
  }
};

inline Model make_model(int m, std::vector<int> letters, bool unital) {
  Model md;
  md.m = m;
  md.unital = unital;
  md.letters = std::move(letters);
  if (unital) md.atoms.push_back({0, 0, 0});
  md.atoms.push_back({1, 0, 0});
  md.atoms.push_back({2, 0, 0});
  for (std::size_t level = 1; level < md.letters.size(); ++level) {
    for (int j = 1; j <= md.size(static_cast<int>(level)); ++j) md.atoms.push_back({3, static_cast<int>(level), j});
  }
  return md;
}

inline std::vector<int> periodic_letters(const std::string& pattern, int levels) {
  std::vector<int> w(static_cast<std::size_t>(levels) + 1, 0);
  for (int i = 1; i <= levels; ++i) w[static_cast<std::size_t>(i)] = pattern[static_cast<std::size_t>(i - 1) % pattern.size()] - '0';
  return w;
}

inline std::vector<int> mechanical_letters(long double alpha, int levels) {
  std::vector<int> w(static_cast<std::size_t>(levels) + 1, 0);
  for (int i = 1; i <= levels; ++i) {
    w[static_cast<std::size_t>(i)] = static_cast<int>(std::floor((i + 1) * alpha) - std::floor(i * alpha));
  }
  return w;
}

struct Tree {
  int leaf = -1;
  std::shared_ptr<Tree> left, right;
};

inline std::vector<std::shared_ptr<Tree>> trees(int lo, int hi) {
  std::vector<std::shared_ptr<Tree>> out;
  if (lo == hi) {
    auto t = std::make_shared<Tree>();
    t->leaf = lo;
    out.push_back(t);
    return out;
  }
  for (int split = lo; split < hi; ++split) {
    for (const auto& l : trees(lo, split)) {
      for (const auto& r : trees(split + 1, hi)) {
        auto t = std::make_shared<Tree>();
        t->left = l;
        t->right = r;
        out.push_back(t);
      }
    }
  }
  return out;
}

inline int evaluate(const Tree& t, const Model& md, const std::vector<int>& at_position) {
  if (t.leaf >= 0) return at_position[static_cast<std::size_t>(t.leaf)];
  const int l = evaluate(*t.left, md, at_position);
  if (l < 0) return -1;
  const int r = evaluate(*t.right, md, at_position);
  if (r < 0) return -1;
  return md.mul(l, r);
}

using SparseRow = std::map<std::int64_t, mpq_class>;

class ExactRank {
 public:
  void add(SparseRow row) {
    while (!row.empty()) {
      const auto lead = row.begin()->first;
      const auto it = pivots_.find(lead);
      if (it == pivots_.end()) {
        const mpq_class scale = row.begin()->second;
        for (auto& [c, v] : row) v /= scale;
        pivots_.emplace(lead, std::move(row));
        return;
      }
      const mpq_class factor = row.begin()->second;
      for (const auto& [c, v] : it->second) {
        auto& slot = row[c];
        slot -= factor * v;
        if (slot == 0) row.erase(c);
      }
    }
  }
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<std::int64_t, SparseRow> pivots_;
};

/// c_n: all n! Catalan(n-1) multilinear monomials, every substitution of
/// atoms into the variables, exact rank.
inline std::size_t codimension(const Model& md, int n) {
  const auto shapes = trees(0, n - 1);
  const auto A = static_cast<std::int64_t>(md.atoms.size());
  std::int64_t subs = 1;
  for (int i = 0; i < n; ++i) subs *= A;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  ExactRank rank;
  std::vector<int> value(static_cast<std::size_t>(n));
  std::vector<int> at_position(static_cast<std::size_t>(n));
  do {
    for (const auto& t : shapes) {
      SparseRow row;
      for (std::int64_t s = 0; s < subs; ++s) {
        std::int64_t rest = s;
        for (int v = 0; v < n; ++v) {
          value[static_cast<std::size_t>(v)] = static_cast<int>(rest % A);
          rest /= A;
        }
        for (int p = 0; p < n; ++p) at_position[static_cast<std::size_t>(p)] = value[static_cast<std::size_t>(perm[static_cast<std::size_t>(p)])];
        const int out = evaluate(*t, md, at_position);
        if (out >= 0) row[s * A + out] = 1;
      }
      rank.add(std::move(row));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return rank.rank();
}

/// dim of polynomials of multidegree mu modulo identities: each variable is a
/// formal combination of all atoms; coordinates are (commutative monomial in
/// the formal coefficients, output atom).
inline std::size_t homogeneous_dim(const Model& md, const std::vector<int>& mu) {
  std::vector<int> word;
  for (std::size_t v = 0; v < mu.size(); ++v) word.insert(word.end(), static_cast<std::size_t>(mu[v]), static_cast<int>(v));
  const int n = static_cast<int>(word.size());
  const auto shapes = trees(0, n - 1);
  const auto A = static_cast<std::int64_t>(md.atoms.size());
  std::int64_t subs = 1;
  for (int i = 0; i < n; ++i) subs *= A;
  std::map<std::vector<std::int64_t>, std::int64_t> column_ids;
  ExactRank rank;
  std::vector<int> at_position(static_cast<std::size_t>(n));
  do {
    for (const auto& t : shapes) {
      SparseRow row;
      for (std::int64_t s = 0; s < subs; ++s) {
        std::int64_t rest = s;
        for (int p = 0; p < n; ++p) {
          at_position[static_cast<std::size_t>(p)] = static_cast<int>(rest % A);
          rest /= A;
        }
        const int out = evaluate(*t, md, at_position);
        if (out < 0) continue;
        std::vector<std::int64_t> key;
        for (int p = 0; p < n; ++p) key.push_back(word[static_cast<std::size_t>(p)] * A + at_position[static_cast<std::size_t>(p)]);
        std::sort(key.begin(), key.end());
        key.push_back(out);
        const auto [it, fresh] = column_ids.emplace(key, static_cast<std::int64_t>(column_ids.size()));
        row[it->second] += 1;
      }
      for (auto it = row.begin(); it != row.end();) it = it->second == 0 ? row.erase(it) : std::next(it);
      rank.add(std::move(row));
    }
  } while (std::next_permutation(word.begin(), word.end()));
  return rank.rank();
}

}  // namespace oracle
