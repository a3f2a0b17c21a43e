#include "pilab/rank.hpp"

#include "pilab/error.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <future>
#include <numeric>
#include <unordered_map>

namespace pilab::linalg {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 splitmix64(u64& state) {
  u64 z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

class Montgomery {
 public:
  explicit Montgomery(u64 p) : p_(p) {
    u64 inv = p;
    for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
    neg_inv_ = ~inv + 1;
    r2_ = static_cast<u64>((static_cast<u128>(1) << 64) % p);
    r2_ = mulmod(r2_, r2_, p);
  }
  u64 p() const { return p_; }
  u64 reduce(u128 t) const {
    const u64 m = static_cast<u64>(t) * neg_inv_;
    const u64 r = static_cast<u64>((t + static_cast<u128>(m) * p_) >> 64);
    return r >= p_ ? r - p_ : r;
  }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 to_mont(u64 a) const { return mul(a, r2_); }

 private:
  u64 p_;
  u64 neg_inv_;
  u64 r2_;
};

u64 residue(std::int64_t v, u64 p) {
  const std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

struct Csr {
  std::vector<std::size_t> ptr;
  std::vector<std::uint32_t> col;
  std::vector<std::int64_t> val;
};

Csr to_csr(const SparseMatrix& a) {
  Csr out;
  out.ptr.assign(a.rows + 1, 0);
  for (const auto r : a.row_idx) ++out.ptr[r + 1];
  std::partial_sum(out.ptr.begin(), out.ptr.end(), out.ptr.begin());
  out.col.resize(a.nonzeros());
  out.val.resize(a.nonzeros());
  std::vector<std::size_t> fill(out.ptr.begin(), out.ptr.end() - 1);
  for (std::size_t c = 0; c < a.cols; ++c) {
    for (std::size_t k = a.col_ptr[c]; k < a.col_ptr[c + 1]; ++k) {
      const auto pos = fill[a.row_idx[k]]++;
      out.col[pos] = static_cast<std::uint32_t>(c);
      out.val[pos] = a.value(k);
    }
  }
  return out;
}

/// Dense row-major matrix mod p with `rows` x `cols` entries in [0, p).
struct Dense {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<u64> data;
  u64* row(std::size_t i) { return data.data() + i * cols; }
};

/// Row echelon form in place; returns the pivot columns in increasing order.
std::vector<std::size_t> eliminate(Dense& a, const Montgomery& mont) {
  const u64 p = mont.p();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
    std::size_t piv = r;
    while (piv < a.rows && a.row(piv)[c] == 0) ++piv;
    if (piv == a.rows) continue;
    if (piv != r) std::swap_ranges(a.row(piv), a.row(piv) + a.cols, a.row(r));
    u64* prow = a.row(r);
    const u64 inv_m = mont.to_mont(powmod(prow[c], p - 2, p));
    for (std::size_t x = c; x < a.cols; ++x) prow[x] = mont.mul(prow[x], inv_m);
    for (std::size_t i = r + 1; i < a.rows; ++i) {
      u64* row = a.row(i);
      if (row[c] == 0) continue;
      const u64 f = mont.to_mont(row[c]);
      for (std::size_t x = c; x < a.cols; ++x) {
        if (prow[x] == 0) continue;
        const u64 t = mont.mul(f, prow[x]);
        row[x] = row[x] >= t ? row[x] - t : row[x] + p - t;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Dense dense_copy(const SparseMatrix& a, u64 p) {
  Dense d{a.rows, a.cols, std::vector<u64>(a.rows * a.cols, 0)};
  for (std::size_t c = 0; c < a.cols; ++c) {
    for (std::size_t k = a.col_ptr[c]; k < a.col_ptr[c + 1]; ++k) {
      d.data[a.row_idx[k] * a.cols + c] = residue(a.value(k), p);
    }
  }
  return d;
}

void add_scaled(u64* dst, const u64* src, std::size_t len, std::int64_t v, u64 p) {
  if (v == 1) {
    for (std::size_t i = 0; i < len; ++i) {
      const u64 s = dst[i] + src[i];
      dst[i] = s >= p ? s - p : s;
    }
  } else {
    const u64 f = residue(v, p);
    for (std::size_t i = 0; i < len; ++i) {
      const u64 s = dst[i] + mulmod(f, src[i], p);
      dst[i] = s >= p ? s - p : s;
    }
  }
}

void random_vector(u64* out, std::size_t len, u64 seed, u64 index, u64 p) {
  u64 state = seed ^ (index * 0xd1b54a32d192ed03ULL);
  for (std::size_t i = 0; i < len; ++i) out[i] = splitmix64(state) % p;
}

/// M^T D M for a random diagonal D: same rank and same column dependencies as
/// M with high probability (Cauchy-Binet makes its r x r minors nonzero
/// polynomials in D).
Dense gram(const SparseMatrix& a, const Csr& csr, u64 p, u64 seed) {
  Dense g{a.cols, a.cols, std::vector<u64>(a.cols * a.cols, 0)};
  u64 state = seed ^ 0x8cb92ba72f3d8dd7ULL;
  for (std::size_t r = 0; r < a.rows; ++r) {
    const u64 d = splitmix64(state) % (p - 1) + 1;
    const auto lo = csr.ptr[r];
    const auto hi = csr.ptr[r + 1];
    for (auto i = lo; i < hi; ++i) {
      const u64 di = csr.val[i] == 1 ? d : mulmod(d, residue(csr.val[i], p), p);
      u64* row = g.row(csr.col[i]);
      for (auto j = lo; j < hi; ++j) {
        const u64 t = csr.val[j] == 1 ? di : mulmod(di, residue(csr.val[j], p), p);
        const u64 s = row[csr.col[j]] + t;
        row[csr.col[j]] = s >= p ? s - p : s;
      }
    }
  }
  return g;
}

std::size_t gram_cost(const Csr& csr) {
  std::size_t cost = 0;
  for (std::size_t r = 0; r + 1 < csr.ptr.size(); ++r) {
    const auto len = csr.ptr[r + 1] - csr.ptr[r];
    cost += len * len;
  }
  return cost;
}

SparseMatrix transpose(const SparseMatrix& a) {
  const Csr csr = to_csr(a);
  SparseMatrix t;
  t.rows = a.cols;
  t.cols = a.rows;
  t.col_ptr = csr.ptr;
  t.row_idx = csr.col;
  if (!a.values.empty()) t.values = csr.val;
  return t;
}

/// G * a with K = cols random dense rows, returned as its transpose (cols x K).
Dense dense_projection_transposed(const SparseMatrix& a, const Csr& csr, u64 p, u64 seed) {
  const std::size_t k = a.cols;
  Dense t{a.cols, k, std::vector<u64>(a.cols * k, 0)};
  std::vector<u64> g(k);
  for (std::size_t r = 0; r < a.rows; ++r) {
    if (csr.ptr[r] == csr.ptr[r + 1]) continue;
    random_vector(g.data(), k, seed, r, p);
    for (std::size_t e = csr.ptr[r]; e < csr.ptr[r + 1]; ++e) add_scaled(t.row(csr.col[e]), g.data(), k, csr.val[e], p);
  }
  return t;
}

/// A dense matrix with `a.cols` columns whose column dependencies match those
/// of `a` with high probability.
Dense row_projection(const SparseMatrix& a, u64 p, u64 seed, std::size_t dense_limit) {
  if (a.rows <= a.cols || a.rows * a.cols <= dense_limit) return dense_copy(a, p);
  const Csr csr = to_csr(a);
  if (gram_cost(csr) <= a.nonzeros() * a.cols) return gram(a, csr, p, seed);
  const Dense t = dense_projection_transposed(a, csr, p, seed);
  const std::size_t k = t.cols;
  Dense y{k, a.cols, std::vector<u64>(k * a.cols)};
  for (std::size_t c = 0; c < a.cols; ++c) {
    for (std::size_t i = 0; i < k; ++i) y.data[i * a.cols + c] = t.data[c * k + i];
  }
  return y;
}

/// A dense matrix of the same rank, with min(rows, cols) rows or columns.
Dense rank_projection(const SparseMatrix& a, u64 p, u64 seed, std::size_t dense_limit) {
  if (a.rows * a.cols <= dense_limit) return dense_copy(a, p);
  if (a.rows < a.cols) return rank_projection(transpose(a), p, seed, dense_limit);
  const Csr csr = to_csr(a);
  if (gram_cost(csr) <= a.nonzeros() * a.cols) return gram(a, csr, p, seed);
  return dense_projection_transposed(a, csr, p, seed);
}

std::uint64_t hash_column(const SparseMatrix& a, std::size_t c) {
  u64 h = 0xcbf29ce484222325ULL;
  for (std::size_t k = a.col_ptr[c]; k < a.col_ptr[c + 1]; ++k) {
    h = (h ^ a.row_idx[k]) * 0x100000001b3ULL;
    h = (h ^ static_cast<u64>(a.value(k))) * 0x100000001b3ULL;
  }
  return h;
}

bool same_column(const SparseMatrix& a, std::size_t x, std::size_t y) {
  const auto lx = a.col_ptr[x + 1] - a.col_ptr[x];
  if (lx != a.col_ptr[y + 1] - a.col_ptr[y]) return false;
  for (std::size_t i = 0; i < lx; ++i) {
    if (a.row_idx[a.col_ptr[x] + i] != a.row_idx[a.col_ptr[y] + i]) return false;
    if (a.value(a.col_ptr[x] + i) != a.value(a.col_ptr[y] + i)) return false;
  }
  return true;
}

/// Indices of the first column of each distinct nonzero column content.
std::vector<std::size_t> distinct_columns(const SparseMatrix& a) {
  std::unordered_map<u64, std::vector<std::size_t>> seen;
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < a.cols; ++c) {
    if (a.col_ptr[c] == a.col_ptr[c + 1]) continue;
    auto& bucket = seen[hash_column(a, c)];
    bool dup = false;
    for (const auto other : bucket) {
      if (same_column(a, c, other)) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      bucket.push_back(c);
      keep.push_back(c);
    }
  }
  return keep;
}

SparseMatrix select_columns(const SparseMatrix& a, const std::vector<std::size_t>& cols) {
  SparseMatrix out;
  out.rows = a.rows;
  const bool ones = a.values.empty();
  for (const auto c : cols) {
    for (std::size_t k = a.col_ptr[c]; k < a.col_ptr[c + 1]; ++k) {
      out.row_idx.push_back(a.row_idx[k]);
      if (!ones) out.values.push_back(a.values[k]);
    }
    out.col_ptr.push_back(out.row_idx.size());
    ++out.cols;
  }
  return out;
}

// ---- exact elimination ----

using SparseVec = std::vector<std::pair<std::uint32_t, mpz_class>>;

void normalize_content(SparseVec& v) {
  mpz_class g = 0;
  for (const auto& [k, x] : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1) {
    for (auto& [k, x] : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

/// v <- alpha * v - beta * w
SparseVec combine(const SparseVec& v, const mpz_class& alpha, const SparseVec& w, const mpz_class& beta) {
  SparseVec out;
  out.reserve(v.size() + w.size());
  std::size_t i = 0, j = 0;
  while (i < v.size() || j < w.size()) {
    if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
      out.emplace_back(v[i].first, alpha * v[i].second);
      ++i;
    } else if (i == v.size() || w[j].first < v[i].first) {
      out.emplace_back(w[j].first, -beta * w[j].second);
      ++j;
    } else {
      mpz_class x = alpha * v[i].second - beta * w[j].second;
      if (x != 0) out.emplace_back(v[i].first, std::move(x));
      ++i;
      ++j;
    }
  }
  return out;
}

/// Incremental echelon basis over Q; insert() reports independence.
class ExactEchelon {
 public:
  bool insert(SparseVec v) {
    while (!v.empty()) {
      const auto it = pivots_.find(v.front().first);
      if (it == pivots_.end()) break;
      const SparseVec& p = basis_[it->second];
      const mpz_class g = gcd(p.front().second, v.front().second);
      const mpz_class alpha = p.front().second / g;
      const mpz_class beta = v.front().second / g;
      v = combine(v, alpha, p, beta);
      normalize_content(v);
    }
    if (v.empty()) return false;
    pivots_.emplace(v.front().first, basis_.size());
    basis_.push_back(std::move(v));
    return true;
  }
  std::size_t size() const { return basis_.size(); }

 private:
  std::vector<SparseVec> basis_;
  std::unordered_map<std::uint32_t, std::size_t> pivots_;
};

SparseVec column_vector(const SparseMatrix& a, std::size_t c) {
  SparseVec v;
  for (std::size_t k = a.col_ptr[c]; k < a.col_ptr[c + 1]; ++k) v.emplace_back(a.row_idx[k], mpz_class(static_cast<long>(a.value(k))));
  return v;
}

std::vector<std::size_t> exact_column_basis(const SparseMatrix& a) {
  ExactEchelon echelon;
  std::vector<std::size_t> basis;
  for (std::size_t c = 0; c < a.cols; ++c) {
    if (echelon.insert(column_vector(a, c))) basis.push_back(c);
  }
  return basis;
}

std::size_t exact_rank_component(const SparseMatrix& a) {
  ExactEchelon echelon;
  if (a.cols <= a.rows) {
    for (std::size_t c = 0; c < a.cols; ++c) echelon.insert(column_vector(a, c));
  } else {
    const Csr csr = to_csr(a);
    for (std::size_t r = 0; r < a.rows; ++r) {
      SparseVec v;
      for (std::size_t e = csr.ptr[r]; e < csr.ptr[r + 1]; ++e) v.emplace_back(csr.col[e], mpz_class(static_cast<long>(csr.val[e])));
      echelon.insert(std::move(v));
    }
  }
  return echelon.size();
}

std::size_t modular_rank_component(const SparseMatrix& a, u64 p, u64 seed, std::size_t dense_limit) {
  if (a.rows == 0 || a.cols == 0) return 0;
  Dense d = rank_projection(a, p, seed, dense_limit);
  return eliminate(d, Montgomery(p)).size();
}

std::vector<std::size_t> modular_column_basis_component(const SparseMatrix& a, u64 p, u64 seed,
                                                        std::size_t dense_limit) {
  if (a.rows == 0 || a.cols == 0) return {};
  Dense d = row_projection(a, p, seed, dense_limit);
  return eliminate(d, Montgomery(p));
}

struct Prepared {
  std::vector<Component> parts;  // deduplicated columns; `columns` index the input
};

Prepared prepare(const SparseMatrix& a) {
  Prepared out;
  for (auto& comp : components(a)) {
    const auto keep = distinct_columns(comp.matrix);
    Component reduced;
    reduced.matrix = select_columns(comp.matrix, keep);
    for (const auto k : keep) reduced.columns.push_back(comp.columns[k]);
    out.parts.push_back(std::move(reduced));
  }
  return out;
}

}  // namespace

void SparseMatrix::push_column(const std::vector<std::uint32_t>& rows_of_col) {
  if (!values.empty()) throw EngineError("mixing unit and valued columns");
  row_idx.insert(row_idx.end(), rows_of_col.begin(), rows_of_col.end());
  col_ptr.push_back(row_idx.size());
  ++cols;
}

void SparseMatrix::push_column(const std::vector<std::uint32_t>& rows_of_col, const std::vector<std::int64_t>& vals) {
  if (values.size() != row_idx.size()) {
    // promote a unit-valued matrix
    values.assign(row_idx.size(), 1);
  }
  row_idx.insert(row_idx.end(), rows_of_col.begin(), rows_of_col.end());
  values.insert(values.end(), vals.begin(), vals.end());
  col_ptr.push_back(row_idx.size());
  ++cols;
}

std::vector<std::vector<std::int64_t>> SparseMatrix::dense() const {
  std::vector<std::vector<std::int64_t>> out(rows, std::vector<std::int64_t>(cols, 0));
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t k = col_ptr[c]; k < col_ptr[c + 1]; ++k) out[row_idx[k]][c] = value(k);
  }
  return out;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& a) {
  SparseMatrix out;
  out.rows = a.size();
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  for (std::size_t c = 0; c < cols; ++c) {
    std::vector<std::uint32_t> r;
    std::vector<std::int64_t> v;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i][c] != 0) {
        r.push_back(static_cast<std::uint32_t>(i));
        v.push_back(a[i][c]);
      }
    }
    out.push_column(r, v);
  }
  return out;
}

std::string RankCertificate::method_string() const {
  std::string s = method == Method::ExactRational ? "exact" : "modular";
  if (!primes.empty()) {
    s += "[";
    for (std::size_t i = 0; i < primes.size(); ++i) s += (i ? ";" : "") + std::to_string(primes[i]);
    s += "]";
  }
  if (escalated) s += "+escalated";
  return s;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (const u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (const u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime(std::uint64_t seed, int which) {
  u64 state = seed;
  int found = -1;
  u64 last = 0;
  while (found < which) {
    u64 candidate = (splitmix64(state) >> 3) | (u64{1} << 61) | 1;
    while (!is_prime_u64(candidate)) candidate += 2;
    if (candidate >= (u64{1} << 62) || candidate == last) continue;
    last = candidate;
    ++found;
  }
  return last;
}

std::vector<Component> components(const SparseMatrix& a) {
  const std::size_t n = a.rows + a.cols;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t c = 0; c < a.cols; ++c) {
    const auto cn = a.rows + c;
    for (std::size_t k = a.col_ptr[c]; k < a.col_ptr[c + 1]; ++k) {
      const auto x = find(a.row_idx[k]);
      const auto y = find(cn);
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
  }
  // components in order of their first column; empty columns are dropped
  std::unordered_map<std::size_t, std::size_t> comp_of_root;
  std::vector<Component> out;
  std::vector<std::size_t> comp_of_col(a.cols, SIZE_MAX);
  for (std::size_t c = 0; c < a.cols; ++c) {
    if (a.col_ptr[c] == a.col_ptr[c + 1]) continue;
    const auto root = find(a.rows + c);
    auto [it, inserted] = comp_of_root.try_emplace(root, out.size());
    if (inserted) out.emplace_back();
    comp_of_col[c] = it->second;
    out[it->second].columns.push_back(c);
  }
  std::vector<std::uint32_t> local_row(a.rows, UINT32_MAX);
  std::vector<std::size_t> next_row(out.size(), 0);
  for (std::size_t r = 0; r < a.rows; ++r) {
    const auto root = find(r);
    const auto it = comp_of_root.find(root);
    if (it == comp_of_root.end()) continue;
    local_row[r] = static_cast<std::uint32_t>(next_row[it->second]++);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& m = out[i].matrix;
    m.rows = next_row[i];
    for (const auto c : out[i].columns) {
      for (std::size_t k = a.col_ptr[c]; k < a.col_ptr[c + 1]; ++k) {
        m.row_idx.push_back(local_row[a.row_idx[k]]);
        if (!a.values.empty()) m.values.push_back(a.values[k]);
      }
      m.col_ptr.push_back(m.row_idx.size());
      ++m.cols;
    }
  }
  return out;
}

std::size_t exact_rank(const SparseMatrix& a) {
  std::size_t r = 0;
  for (const auto& part : prepare(a).parts) r += exact_rank_component(part.matrix);
  return r;
}

std::size_t modular_rank(const SparseMatrix& a, std::uint64_t p, std::uint64_t seed, std::size_t dense_limit) {
  std::size_t r = 0;
  for (const auto& part : prepare(a).parts) r += modular_rank_component(part.matrix, p, seed, dense_limit);
  return r;
}

RankCertificate rank(const SparseMatrix& a, const RankOptions& options) {
  RankCertificate cert;
  cert.rows = a.rows;
  cert.cols = a.cols;
  cert.nonzeros = a.nonzeros();
  const Prepared prep = prepare(a);
  cert.components = prep.parts.size();

  auto exact = [&] {
    std::size_t r = 0;
    for (const auto& part : prep.parts) r += exact_rank_component(part.matrix);
    return r;
  };
  if (options.exact) {
    cert.rank = exact();
    cert.method = Method::ExactRational;
    return cert;
  }

  const u64 p1 = random_prime(options.seed, 0);
  const u64 p2 = random_prime(options.seed, 1);
  auto modular = [&](u64 p, u64 salt) {
    std::size_t r = 0;
    for (const auto& part : prep.parts) r += modular_rank_component(part.matrix, p, options.seed ^ salt, options.dense_limit);
    return r;
  };
  std::size_t r1 = 0;
  std::size_t r2 = 0;
  if (options.workers > 1) {
    auto f = std::async(std::launch::async, modular, p2, 0x2545f4914f6cdd1dULL);
    r1 = modular(p1, 0x61c8864680b583ebULL);
    r2 = f.get();
  } else {
    r1 = modular(p1, 0x61c8864680b583ebULL);
    r2 = modular(p2, 0x2545f4914f6cdd1dULL);
  }
  cert.primes = {p1, p2};
  cert.method = Method::Modular;
  if (r1 != r2) {
    cert.rank = exact();
    cert.method = Method::ExactRational;
    cert.escalated = true;
    return cert;
  }
  cert.rank = r1;
  if (options.cross_check_exact) {
    const std::size_t e = exact();
    if (e != r1) {
      throw EngineError("modular rank " + std::to_string(r1) + " disagrees with exact rank " + std::to_string(e));
    }
    cert.method = Method::ExactRational;
  }
  return cert;
}

std::vector<std::size_t> column_basis(const SparseMatrix& a, const RankOptions& options) {
  const Prepared prep = prepare(a);
  std::vector<std::size_t> basis;
  for (const auto& part : prep.parts) {
    std::vector<std::size_t> local;
    if (options.exact) {
      local = exact_column_basis(part.matrix);
    } else {
      const u64 p1 = random_prime(options.seed, 0);
      const u64 p2 = random_prime(options.seed, 1);
      local = modular_column_basis_component(part.matrix, p1, options.seed ^ 0x61c8864680b583ebULL, options.dense_limit);
      const auto check = modular_column_basis_component(part.matrix, p2, options.seed ^ 0x2545f4914f6cdd1dULL, options.dense_limit);
      if (local != check) local = exact_column_basis(part.matrix);
    }
    for (const auto k : local) basis.push_back(part.columns[k]);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

}  // namespace pilab::linalg
