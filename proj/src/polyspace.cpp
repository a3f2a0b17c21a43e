#include "pilab/polyspace.hpp"

#include "pilab/error.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <thread>
#include <unordered_map>

namespace pilab::poly {

using algebra::BasisElement;
using algebra::Tag;

namespace {

template <class F>
void parallel_for(std::size_t count, int workers, F&& f) {
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const auto nthreads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
  for (std::size_t t = 0; t < nthreads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

/// Rows of one substitution, grouped by output atom in atom order.
using ColumnResult = std::vector<std::pair<BasisElement, std::vector<std::uint32_t>>>;

void add_row(ColumnResult& out, const BasisElement& atom, std::uint32_t row) {
  for (auto& [a, rows] : out) {
    if (a == atom) {
      rows.push_back(row);
      return;
    }
  }
  out.emplace_back(atom, std::vector<std::uint32_t>{row});
}

void words_over(const std::vector<BasisElement>& alphabet, int length, std::vector<std::vector<BasisElement>>& out) {
  out.clear();
  std::vector<BasisElement> current(static_cast<std::size_t>(length));
  std::vector<std::size_t> digits(static_cast<std::size_t>(length), 0);
  if (length == 0) {
    out.push_back({});
    return;
  }
  while (true) {
    for (std::size_t i = 0; i < digits.size(); ++i) current[i] = alphabet[digits[i]];
    out.push_back(current);
    std::size_t i = digits.size();
    while (i > 0) {
      --i;
      if (++digits[i] < alphabet.size()) break;
      digits[i] = 0;
      if (i == 0) return;
    }
  }
}

std::vector<BasisElement> alphabet_of(bool unital) {
  std::vector<BasisElement> alphabet;
  if (unital) alphabet.push_back(BasisElement::one());
  alphabet.push_back(BasisElement::a());
  alphabet.push_back(BasisElement::b());
  return alphabet;
}

std::set<words::Bits> certified_factors(const algebra::AlgebraSpec& spec, std::size_t length) {
  const auto c = words::complexity(spec.word, length);
  if (!c.factor_set.certified) {
    throw EngineError("factor set of length " + std::to_string(length) + " could not be certified for " +
                      spec.word.to_string());
  }
  return c.factor_set.factors;
}

/// Walks the unique accepted letter sequence of length `steps` from z(1,j).
struct Walk {
  std::string letters;  // 'a'/'b'
  BasisElement end;
};

Walk accepted_walk(int j, const words::Bits& window, int m, int steps) {
  const algebra::LevelWindow sizes(m, window);
  Walk w;
  BasisElement cur = BasisElement::z(1, j);
  for (int s = 0; s < steps; ++s) {
    if (cur.index < sizes.size_at(cur.level)) {
      w.letters.push_back('a');
      cur.index += 1;
    } else {
      w.letters.push_back('b');
      cur = BasisElement::z(cur.level + 1, 1);
    }
  }
  w.end = cur;
  return w;
}

/// One representative substitution per class (Z position, letters elsewhere,
/// accepted word), skipping classes whose letters cannot spell the word.
std::vector<SubstitutionColumn> nonunital_plan(int n, const algebra::AlgebraSpec& spec, std::size_t extra) {
  if (n == 1) return certified_substitutions(1, spec, extra);
  const auto factors = certified_factors(spec, static_cast<std::size_t>(n) + 1 + extra);
  // accepted word -> first (factor, j) producing it
  std::map<std::string, std::pair<words::Bits, int>> by_word;
  for (const auto& f : factors) {
    for (int j = 1; j <= spec.m + f[0]; ++j) {
      by_word.try_emplace(accepted_walk(j, f, spec.m, n - 1).letters, f, j);
    }
  }
  std::vector<SubstitutionColumn> plan;
  for (int p = 0; p < n; ++p) {
    for (const auto& [word, source] : by_word) {
      std::string letters = word;
      std::sort(letters.begin(), letters.end());
      do {
        SubstitutionColumn col;
        col.window = source.first;
        col.values.reserve(static_cast<std::size_t>(n));
        std::size_t t = 0;
        for (int q = 0; q < n; ++q) {
          if (q == p) {
            col.values.push_back(BasisElement::z(1, source.second));
          } else {
            col.values.push_back(letters[t++] == 'a' ? BasisElement::a() : BasisElement::b());
          }
        }
        plan.push_back(std::move(col));
      } while (std::next_permutation(letters.begin(), letters.end()));
    }
  }
  return plan;
}

void append_columns(linalg::SparseMatrix& matrix, std::vector<std::uint32_t>& source,
                    std::vector<ColumnResult>& results) {
  for (std::size_t s = 0; s < results.size(); ++s) {
    auto& res = results[s];
    std::sort(res.begin(), res.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [atom, rows] : res) {
      std::sort(rows.begin(), rows.end());
      matrix.push_column(rows);
      source.push_back(static_cast<std::uint32_t>(s));
    }
    res.clear();
    res.shrink_to_fit();
  }
}

}  // namespace

std::vector<Monomial> enumerate_multilinear(int n, Mode mode, const Caps& caps) {
  const MonomialTable table(n, mode, caps);
  std::vector<Monomial> out;
  out.reserve(table.size());
  for (std::size_t r = 0; r < table.size(); ++r) out.push_back(table.monomial(r));
  return out;
}

MonomialTable::MonomialTable(int n, Mode mode, const Caps& caps) : n_(n), mode_(mode) {
  if (n < 1) throw DomainError("degree must be positive");
  const int cap = mode == Mode::All ? caps.enumerate_all : caps.enumerate_left_normed;
  if (n > cap && !caps.override_caps) {
    throw EngineError("degree " + std::to_string(n) + " exceeds the enumeration cap " + std::to_string(cap));
  }
  if (n > 12) throw EngineError("degree too large for the monomial table");
  trees_ = mode == Mode::All ? all_bracketings(n) : std::vector<Bracketing>{Bracketing::left_normed(n)};
  std::vector<std::uint8_t> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  perms_.reserve(factorial_u64(n) * static_cast<std::size_t>(n));
  do {
    perms_.insert(perms_.end(), p.begin(), p.end());
  } while (std::next_permutation(p.begin(), p.end()));
}

std::pair<std::size_t, std::size_t> MonomialTable::leading_range(int v) const {
  const std::size_t block = factorial_u64(n_ - 1) * trees_.size();
  return {static_cast<std::size_t>(v) * block, static_cast<std::size_t>(v + 1) * block};
}

Monomial MonomialTable::monomial(std::size_t row) const {
  const auto p = perm(row);
  return Monomial{std::vector<std::uint8_t>(p.begin(), p.end()), trees_[tree_id(row)]};
}

std::size_t permutation_rank(std::span<const std::uint8_t> perm) {
  const std::size_t n = perm.size();
  std::size_t rank = 0;
  std::uint32_t used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t below = std::popcount(used & ((1u << perm[i]) - 1));
    const std::size_t smaller = perm[i] - below;
    rank = rank * (n - i) + smaller;
    used |= 1u << perm[i];
  }
  return rank;
}

std::string SubstitutionColumn::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + values[i].to_string();
  s += ")";
  if (!window.empty()) s += "|" + words::to_ascii(window);
  return s;
}

std::vector<SubstitutionColumn> certified_substitutions(int n, const algebra::AlgebraSpec& spec,
                                                        std::size_t extra_window) {
  if (n < 1) throw DomainError("degree must be positive");
  const auto factors = certified_factors(spec, static_cast<std::size_t>(n) + 1 + extra_window);
  const auto alphabet = alphabet_of(spec.unital);
  std::vector<SubstitutionColumn> out;
  std::vector<std::vector<BasisElement>> tuples;
  words_over(alphabet, n, tuples);
  for (auto& t : tuples) out.push_back(SubstitutionColumn{std::move(t), {}});
  words_over(alphabet, n - 1, tuples);
  for (int p = 0; p < n; ++p) {
    for (const auto& f : factors) {
      for (int j = 1; j <= spec.m + f[0]; ++j) {
        for (const auto& t : tuples) {
          SubstitutionColumn col;
          col.window = f;
          col.values = t;
          col.values.insert(col.values.begin() + p, BasisElement::z(1, j));
          out.push_back(std::move(col));
        }
      }
    }
  }
  return out;
}

std::optional<BasisElement> evaluate_row(const MonomialTable& table, std::size_t row, const SubstitutionColumn& column,
                                         int m) {
  const algebra::LevelWindow sizes(m, column.window);
  const auto perm = table.perm(row);
  return evaluate_tree<BasisElement>(
      table.tree(table.tree_id(row)).postfix(),
      [&](int leaf) { return std::optional<BasisElement>(column.values[perm[static_cast<std::size_t>(leaf)]]); },
      [&](const BasisElement& x, const BasisElement& y) { return algebra::multiply_atoms(x, y, sizes); });
}

Mode default_mode(const algebra::AlgebraSpec& spec) { return spec.unital ? Mode::All : Mode::LeftNormed; }

std::size_t estimate_bytes(int n, const algebra::AlgebraSpec& spec, const EngineOptions& options) {
  const Mode mode = options.rows.value_or(default_mode(spec));
  const std::size_t rows = factorial_u64(n) * (mode == Mode::All ? catalan(n - 1) : 1);
  // permutations, then roughly a few dozen nonzeros per row
  return rows * static_cast<std::size_t>(n) + rows * 48 * sizeof(std::uint32_t);
}

void check_caps(int n, const algebra::AlgebraSpec& spec, const EngineOptions& options) {
  if (n < 1) throw DomainError("degree must be positive");
  if (options.caps.override_caps) return;
  const Mode mode = options.rows.value_or(default_mode(spec));
  const int cap = spec.unital ? options.caps.unital_codim
                              : (mode == Mode::All ? options.caps.enumerate_all : options.caps.nonunital_codim);
  if (n > cap) {
    throw EngineError("degree " + std::to_string(n) + " exceeds the cap " + std::to_string(cap) +
                      " for this run (override to force)");
  }
}

MultilinearSystem::MultilinearSystem(int n, const algebra::AlgebraSpec& spec, const EngineOptions& options)
    : options_(options),
      table_((check_caps(n, spec, options), n), options.rows.value_or(default_mode(spec)), options.caps) {
  if (spec.unital && table_.mode() == Mode::LeftNormed) {
    throw DomainError("unital runs need all bracketings as rows");
  }
  matrix_.rows = table_.size();
  if (options.plan == ColumnPlan::Certified || n == 1) {
    substitutions_ = certified_substitutions(n, spec, options.extra_window);
    build_direct(spec);
  } else if (spec.unital) {
    build_unital(spec);
  } else if (table_.mode() == Mode::LeftNormed) {
    substitutions_ = nonunital_plan(n, spec, options.extra_window);
    build_left_normed(spec);
  } else {
    substitutions_ = nonunital_plan(n, spec, options.extra_window);
    build_direct(spec);
  }
}

void MultilinearSystem::build_direct(const algebra::AlgebraSpec& spec) {
  const int n = table_.degree();
  std::vector<ColumnResult> results(substitutions_.size());
  parallel_for(substitutions_.size(), options_.workers, [&](std::size_t s) {
    const auto& col = substitutions_[s];
    ColumnResult res;
    for (int v = 0; v < n; ++v) {
      // in A itself a and b kill everything on their right
      if (n >= 2 && !spec.unital && col.values[static_cast<std::size_t>(v)].is_letter()) continue;
      const auto [lo, hi] = table_.leading_range(v);
      for (std::size_t r = lo; r < hi; ++r) {
        if (const auto out = evaluate_row(table_, r, col, spec.m)) add_row(res, *out, static_cast<std::uint32_t>(r));
      }
    }
    results[s] = std::move(res);
  });
  append_columns(matrix_, column_source_, results);
}

void MultilinearSystem::build_left_normed(const algebra::AlgebraSpec& spec) {
  const int n = table_.degree();
  std::vector<ColumnResult> results(substitutions_.size());
  parallel_for(substitutions_.size(), options_.workers, [&](std::size_t s) {
    const auto& col = substitutions_[s];
    int p = -1;
    std::vector<std::uint8_t> pa, pb;
    for (int q = 0; q < n; ++q) {
      const auto& v = col.values[static_cast<std::size_t>(q)];
      if (v.is_z()) p = q;
      else if (v.tag == Tag::A) pa.push_back(static_cast<std::uint8_t>(q));
      else pb.push_back(static_cast<std::uint8_t>(q));
    }
    const Walk walk = accepted_walk(col.values[static_cast<std::size_t>(p)].index, col.window, spec.m, n - 1);
    std::vector<std::size_t> sa, sb;
    for (std::size_t t = 0; t < walk.letters.size(); ++t) (walk.letters[t] == 'a' ? sa : sb).push_back(t + 1);
    ColumnResult res;
    if (sa.size() == pa.size()) {
      std::vector<std::uint32_t> rows;
      std::vector<std::uint8_t> perm(static_cast<std::size_t>(n));
      perm[0] = static_cast<std::uint8_t>(p);
      do {
        for (std::size_t i = 0; i < sa.size(); ++i) perm[sa[i]] = pa[i];
        auto pb_iter = pb;
        do {
          for (std::size_t i = 0; i < sb.size(); ++i) perm[sb[i]] = pb_iter[i];
          rows.push_back(static_cast<std::uint32_t>(permutation_rank(perm)));
        } while (std::next_permutation(pb_iter.begin(), pb_iter.end()));
      } while (std::next_permutation(pa.begin(), pa.end()));
      res.emplace_back(walk.end, std::move(rows));
    }
    results[s] = std::move(res);
  });
  append_columns(matrix_, column_source_, results);
}

void MultilinearSystem::build_unital(const algebra::AlgebraSpec& spec) {
  const int n = table_.degree();
  const std::size_t ntrees = table_.tree_count();
  const std::size_t full = std::size_t{1} << n;

  // all units: every monomial evaluates to 1
  {
    SubstitutionColumn ones{std::vector<BasisElement>(static_cast<std::size_t>(n), BasisElement::one()), {}};
    substitutions_.push_back(std::move(ones));
    std::vector<std::uint32_t> rows(table_.size());
    std::iota(rows.begin(), rows.end(), 0);
    matrix_.push_column(rows);
    column_source_.push_back(0);
  }

  // comb[t][leafmask]: keeping exactly these leaves of tree t leaves a comb
  std::vector<std::vector<std::uint8_t>> comb(ntrees, std::vector<std::uint8_t>(full, 0));
  for (std::size_t t = 0; t < ntrees; ++t) {
    const auto post = table_.tree(t).postfix();
    for (std::size_t mask = 0; mask < full; ++mask) {
      struct Node {
        int leaves;
        bool comb;
      };
      std::array<Node, kMaxDegree> stack{};
      int top = 0;
      int leaf = 0;
      for (const auto op : post) {
        if (op == 0) {
          const bool keep = (mask >> leaf) & 1;
          stack[top++] = Node{keep ? 1 : 0, true};
          ++leaf;
        } else {
          const Node r = stack[--top];
          Node& l = stack[top - 1];
          if (l.leaves == 0) {
            l = r;
          } else if (r.leaves != 0) {
            l = Node{l.leaves + r.leaves, l.comb && r.leaves == 1};
          }
        }
      }
      comb[t][mask] = stack[0].comb ? 1 : 0;
    }
  }

  algebra::AlgebraSpec base(spec.m, spec.word, false);
  EngineOptions sub = options_;
  sub.rows = Mode::LeftNormed;
  sub.plan = ColumnPlan::Reduced;

  for (int k = 2; k <= n; ++k) {
    const MultilinearSystem ek(k, base, sub);
    const auto basis = linalg::column_basis(ek.matrix(), options_.rank);
    if (basis.empty()) continue;
    const auto& em = ek.matrix();

    std::vector<std::size_t> masks;
    for (std::size_t v = 0; v < full; ++v) {
      if (std::popcount(v) == k) masks.push_back(v);
    }
    const std::size_t kfact = factorial_u64(k);
    for (const auto vmask : masks) {
      // rows bucketed by the permutation the non-unit variables appear in
      std::vector<std::vector<std::uint32_t>> bucket(kfact);
      const std::size_t nperms = table_.size() / ntrees;
      std::vector<std::uint8_t> restricted(static_cast<std::size_t>(k));
      for (std::size_t pid = 0; pid < nperms; ++pid) {
        const auto perm = table_.perm(pid * ntrees);
        std::size_t leafmask = 0;
        std::size_t kk = 0;
        for (int t = 0; t < n; ++t) {
          const auto v = perm[static_cast<std::size_t>(t)];
          if ((vmask >> v) & 1) {
            leafmask |= std::size_t{1} << t;
            restricted[kk++] = static_cast<std::uint8_t>(std::popcount(vmask & ((std::size_t{1} << v) - 1)));
          }
        }
        const auto krank = permutation_rank(restricted);
        for (std::size_t t = 0; t < ntrees; ++t) {
          if (comb[t][leafmask]) bucket[krank].push_back(static_cast<std::uint32_t>(table_.row_of(pid, t)));
        }
      }
      std::vector<int> positions;
      for (int v = 0; v < n; ++v) {
        if ((vmask >> v) & 1) positions.push_back(v);
      }
      for (const auto c : basis) {
        std::vector<std::uint32_t> rows;
        for (std::size_t e = em.col_ptr[c]; e < em.col_ptr[c + 1]; ++e) {
          const auto& b = bucket[em.row_idx[e]];
          rows.insert(rows.end(), b.begin(), b.end());
        }
        std::sort(rows.begin(), rows.end());
        const auto& src = ek.substitutions()[ek.column_source()[c]];
        SubstitutionColumn col{std::vector<BasisElement>(static_cast<std::size_t>(n), BasisElement::one()), src.window};
        for (std::size_t i = 0; i < positions.size(); ++i) col.values[static_cast<std::size_t>(positions[i])] = src.values[i];
        column_source_.push_back(static_cast<std::uint32_t>(substitutions_.size()));
        substitutions_.push_back(std::move(col));
        matrix_.push_column(rows);
      }
    }
  }
}

linalg::RankCertificate MultilinearSystem::codimension() const { return linalg::rank(matrix_, options_.rank); }

linalg::SparseMatrix MultilinearSystem::orbit_matrix(std::span<const int> mu) const {
  const int n = table_.degree();
  std::vector<std::uint8_t> label(static_cast<std::size_t>(n));
  int v = 0;
  int blocks = 0;
  for (const int part : mu) {
    if (part < 0) throw DomainError("composition parts must be non-negative");
    if (part == 0) continue;
    for (int i = 0; i < part; ++i) label[static_cast<std::size_t>(v++)] = static_cast<std::uint8_t>(blocks);
    ++blocks;
  }
  if (v != n) throw DomainError("composition does not sum to the degree");

  // orbit of a row: its bracketing plus the block label at each leaf
  std::unordered_map<std::uint64_t, std::uint32_t> orbit_id;
  std::vector<std::uint32_t> orbit_of(table_.size());
  const auto base = static_cast<std::uint64_t>(blocks);
  for (std::size_t r = 0; r < table_.size(); ++r) {
    std::uint64_t key = 0;
    for (const auto x : table_.perm(r)) key = key * base + label[x];
    key = key * table_.tree_count() + table_.tree_id(r);
    const auto [it, inserted] = orbit_id.try_emplace(key, static_cast<std::uint32_t>(orbit_id.size()));
    orbit_of[r] = it->second;
  }

  linalg::SparseMatrix out;
  out.rows = orbit_id.size();
  out.values.reserve(matrix_.nonzeros());
  std::vector<std::uint32_t> ids;
  std::vector<std::uint32_t> rows;
  std::vector<std::int64_t> counts;
  for (std::size_t c = 0; c < matrix_.cols; ++c) {
    ids.clear();
    for (std::size_t e = matrix_.col_ptr[c]; e < matrix_.col_ptr[c + 1]; ++e) ids.push_back(orbit_of[matrix_.row_idx[e]]);
    std::sort(ids.begin(), ids.end());
    rows.clear();
    counts.clear();
    for (std::size_t i = 0; i < ids.size();) {
      std::size_t j = i;
      while (j < ids.size() && ids[j] == ids[i]) ++j;
      rows.push_back(ids[i]);
      counts.push_back(static_cast<std::int64_t>(j - i));
      i = j;
    }
    out.push_column(rows, counts);
  }
  return out;
}

linalg::RankCertificate MultilinearSystem::homogeneous(std::span<const int> mu) const {
  bool all_ones = true;
  for (const int part : mu) all_ones = all_ones && (part == 0 || part == 1);
  if (all_ones) {
    int total = 0;
    for (const int part : mu) total += part;
    if (total != degree()) throw DomainError("composition does not sum to the degree");
    return codimension();
  }
  return linalg::rank(orbit_matrix(mu), options_.rank);
}

void MultilinearSystem::export_coordinates(std::ostream& out) const {
  out << "% " << matrix_.rows << " " << matrix_.cols << " " << matrix_.nonzeros() << "\n";
  for (std::size_t c = 0; c < matrix_.cols; ++c) {
    for (std::size_t e = matrix_.col_ptr[c]; e < matrix_.col_ptr[c + 1]; ++e) {
      out << matrix_.row_idx[e] + 1 << " " << c + 1 << " " << matrix_.value(e) << "\n";
    }
  }
}

CodimResult codimension(int n, const algebra::AlgebraSpec& spec, const EngineOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const MultilinearSystem system(n, spec, options);
  CodimResult out;
  out.n = n;
  out.certificate = system.codimension();
  out.value = out.certificate.rank;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

linalg::RankCertificate homogeneous_dim(std::span<const int> mu, const algebra::AlgebraSpec& spec,
                                        const EngineOptions& options) {
  const int n = std::accumulate(mu.begin(), mu.end(), 0);
  const MultilinearSystem system(n, spec, options);
  return system.homogeneous(mu);
}

WndResult w_nd_dim(const MultilinearSystem& system, int d, const algebra::AlgebraSpec& spec) {
  if (d < 1) throw DomainError("d must be positive");
  const int n = system.degree();
  WndResult out;
  // partitions of n with at most d parts, each counted once per arrangement into d slots
  std::vector<int> parts;
  auto recurse = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      std::map<int, int> mult;
      for (const int p : parts) ++mult[p];
      mult[0] += d - static_cast<int>(parts.size());
      std::size_t arrangements = factorial_u64(d);
      for (const auto& [value, count] : mult) arrangements /= factorial_u64(count);
      out.value += arrangements * system.homogeneous(parts).rank;
      return;
    }
    if (static_cast<int>(parts.size()) == d) return;
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      self(self, remaining - p, p);
      parts.pop_back();
    }
  };
  recurse(recurse, n, n);
  const auto comp = words::complexity(spec.word, static_cast<std::size_t>(n)).count;
  out.bound = static_cast<std::size_t>(d) * static_cast<std::size_t>(spec.m + 1) * static_cast<std::size_t>(n) * comp;
  return out;
}

WndResult w_nd_dim(int n, int d, const algebra::AlgebraSpec& spec, const EngineOptions& options) {
  const MultilinearSystem system(n, spec, options);
  return w_nd_dim(system, d, spec);
}

linalg::RankCertificate structure_codimension(const algebra::StructureAlgebra& alg, int n, Mode mode,
                                              const EngineOptions& options) {
  const MonomialTable table(n, mode, options.caps);
  const auto dim = static_cast<std::size_t>(alg.dimension());
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) {
    count *= dim;
    if (count > 20'000'000) throw EngineError("too many substitutions for a brute-force structure codimension");
  }
  std::vector<std::vector<std::pair<int, std::vector<std::uint32_t>>>> results(count);
  parallel_for(count, options.workers, [&](std::size_t s) {
    std::vector<int> values(static_cast<std::size_t>(n));
    std::size_t x = s;
    for (int i = n - 1; i >= 0; --i) {
      values[static_cast<std::size_t>(i)] = static_cast<int>(x % dim);
      x /= dim;
    }
    auto& res = results[s];
    for (int v = 0; v < n; ++v) {
      if (n >= 2 && alg.is_left_annihilator(values[static_cast<std::size_t>(v)])) continue;
      const auto [lo, hi] = table.leading_range(v);
      for (std::size_t r = lo; r < hi; ++r) {
        const auto perm = table.perm(r);
        const auto out = evaluate_tree<int>(
            table.tree(table.tree_id(r)).postfix(),
            [&](int leaf) { return std::optional<int>(values[perm[static_cast<std::size_t>(leaf)]]); },
            [&](int a, int b) -> std::optional<int> {
              const int p = alg.multiply(a, b);
              return p == algebra::StructureAlgebra::kZero ? std::nullopt : std::optional<int>(p);
            });
        if (!out) continue;
        auto it = std::find_if(res.begin(), res.end(), [&](const auto& e) { return e.first == *out; });
        if (it == res.end()) {
          res.emplace_back(*out, std::vector<std::uint32_t>{});
          it = std::prev(res.end());
        }
        it->second.push_back(static_cast<std::uint32_t>(r));
      }
    }
  });
  linalg::SparseMatrix m;
  m.rows = table.size();
  for (auto& res : results) {
    std::sort(res.begin(), res.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [atom, rows] : res) m.push_column(rows);
    res.clear();
    res.shrink_to_fit();
  }
  return linalg::rank(m, options.rank);
}

}  // namespace pilab::poly
