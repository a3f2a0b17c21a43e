#include "pilab/witness.hpp"

#include "pilab/error.hpp"
#include "pilab/phi.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace pilab::witness {

namespace {

using algebra::AlgebraElement;
using algebra::BasisElement;
using boost::multiprecision::abs;

std::vector<int> prefix_sums(const words::WordSpec& word, std::size_t len) {
  const auto bits = words::generate_prefix(word, std::max<std::size_t>(len, 1));
  std::vector<int> sums(bits.size() + 1, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) sums[i + 1] = sums[i] + bits[i];
  return sums;
}

mpz_class factorial(int k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(std::max(k, 0)));
  return f;
}

struct CachedSizes {
  std::vector<std::int32_t> sizes;
  std::int32_t size_at(std::int32_t level) const {
    if (level < 1 || level > static_cast<std::int32_t>(sizes.size())) throw EngineError("level outside the cached window");
    return sizes[static_cast<std::size_t>(level - 1)];
  }
};

// All permutations of a block with their signs, as images of positions.
struct BlockPerms {
  std::vector<int> entries;
  std::vector<std::vector<int>> images;
  std::vector<int> signs;
};

BlockPerms block_perms(const std::vector<int>& entries, bool signed_sum) {
  BlockPerms out;
  out.entries = entries;
  std::vector<int> p(entries.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
    }
    out.images.push_back(p);
    out.signs.push_back(signed_sum && (inversions % 2) ? -1 : 1);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Calls visit(mapping, sign) for every element of the product of the block
// groups; mapping is a permutation of 1..n (index 0 unused).
template <class Visit>
void for_each_group_element(const std::vector<BlockPerms>& blocks, int n, Visit&& visit) {
  std::vector<std::size_t> choice(blocks.size(), 0);
  std::vector<int> mapping(static_cast<std::size_t>(n) + 1);
  while (true) {
    std::iota(mapping.begin(), mapping.end(), 0);
    int sign = 1;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& blk = blocks[b];
      const auto& img = blk.images[choice[b]];
      for (std::size_t t = 0; t < img.size(); ++t) {
        mapping[static_cast<std::size_t>(blk.entries[t])] = blk.entries[static_cast<std::size_t>(img[t])];
      }
      sign *= blk.signs[choice[b]];
    }
    visit(mapping, sign);
    std::size_t b = 0;
    while (b < blocks.size() && ++choice[b] == blocks[b].images.size()) choice[b++] = 0;
    if (b == blocks.size()) return;
  }
}

std::vector<BlockPerms> groups_of(const std::vector<std::vector<int>>& blocks, bool signed_sum) {
  std::vector<BlockPerms> out;
  for (const auto& blk : blocks) {
    if (blk.size() > 1) out.push_back(block_perms(blk, signed_sum));
  }
  return out;
}

std::size_t group_order(const std::vector<std::vector<int>>& blocks) {
  std::size_t total = 1;
  for (const auto& blk : blocks) {
    for (std::size_t i = 2; i <= blk.size(); ++i) {
      if (total > (std::size_t{1} << 40)) return total;
      total *= i;
    }
  }
  return total;
}

}  // namespace

std::string to_string(Form form) { return form == Form::FirstRowLong ? "first_row_long" : "second_row_long"; }

Tableau::Tableau(std::vector<std::vector<int>> rows) : rows_(std::move(rows)) {
  std::vector<int> lengths;
  for (const auto& r : rows_) lengths.push_back(static_cast<int>(r.size()));
  shape_ = rep::Partition(lengths);
  const auto n = static_cast<std::size_t>(shape_.size());
  std::vector<bool> seen(n + 1, false);
  for (const auto& r : rows_) {
    for (const int e : r) {
      if (e < 1 || static_cast<std::size_t>(e) > n || seen[static_cast<std::size_t>(e)]) {
        throw DomainError("tableau filling must be a bijection onto 1..n");
      }
      seen[static_cast<std::size_t>(e)] = true;
    }
  }
}

std::vector<std::vector<int>> Tableau::columns() const {
  std::vector<std::vector<int>> cols(rows_.empty() ? 0 : rows_[0].size());
  for (const auto& r : rows_) {
    for (std::size_t c = 0; c < r.size(); ++c) cols[c].push_back(r[c]);
  }
  return cols;
}

std::string Tableau::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) s += " / ";
    for (std::size_t j = 0; j < rows_[i].size(); ++j) s += (j ? " " : "") + std::to_string(rows_[i][j]);
  }
  return s;
}

rep::Partition family_shape(int m, const words::WordSpec& word, int r, int j, Form form) {
  if (m < 2) throw DomainError("m must be at least 2");
  if (r < 1) throw DomainError("r must be at least 1");
  const auto sums = prefix_sums(word, static_cast<std::size_t>(r));
  const int long_row = (m - 1) * r + sums[static_cast<std::size_t>(r)];
  if (form == Form::FirstRowLong) {
    if (j < long_row) throw DomainError("first-row form needs j >= " + std::to_string(long_row));
    return rep::Partition({j, long_row, r, 1});
  }
  if (!(long_row > j && j >= r)) {
    throw DomainError("second-row form needs " + std::to_string(long_row) + " > j >= " + std::to_string(r));
  }
  return rep::Partition({long_row, j, r, 1});
}

TableauWitness build_tableau(int m, const words::WordSpec& word, int r, int j, Form form) {
  const rep::Partition shape = family_shape(m, word, r, j, form);
  const auto bits = words::generate_prefix(word, static_cast<std::size_t>(r));
  const int n0 = shape.size() - j;

  std::vector<int> b_positions;
  int pos = 1;
  for (int s = 0; s < r; ++s) {
    pos += m - 1 + bits[static_cast<std::size_t>(s)] + 1;
    b_positions.push_back(pos);
  }

  std::vector<int> units(static_cast<std::size_t>(j));
  std::iota(units.begin(), units.end(), n0 + 1);
  std::vector<int> letters_row;
  std::vector<bool> used(static_cast<std::size_t>(n0) + 1, false);
  for (const int p : b_positions) {
    letters_row.push_back(p - 1);
    used[static_cast<std::size_t>(p - 1)] = used[static_cast<std::size_t>(p)] = true;
  }
  for (int e = 2; e <= n0; ++e) {
    if (!used[static_cast<std::size_t>(e)]) letters_row.push_back(e);
  }

  std::vector<std::vector<int>> rows;
  if (form == Form::FirstRowLong) {
    rows = {units, letters_row, b_positions, {1}};
  } else {
    rows = {letters_row, units, b_positions, {1}};
  }

  const int n = shape.size();
  std::vector<BasisElement> sub(static_cast<std::size_t>(n), BasisElement::a());
  sub[0] = BasisElement::z(1, 1);
  for (const int p : b_positions) sub[static_cast<std::size_t>(p - 1)] = BasisElement::b();
  for (const int u : units) sub[static_cast<std::size_t>(u - 1)] = BasisElement::one();

  TableauWitness out{Tableau(std::move(rows)), std::move(sub), n0, b_positions, 0};
  if (out.tableau.shape() != shape) throw EngineError("tableau shape mismatch");
  out.expected = factorial(j) * factorial(r) * factorial(n0 - r - 1);
  return out;
}

AlgebraElement evaluate_symmetrizer(const Tableau& tableau, const std::vector<BasisElement>& substitution,
                                    const algebra::AlgebraSpec& spec, const SymmetrizerOptions& options) {
  const int n = tableau.size();
  if (static_cast<int>(substitution.size()) != n) throw DomainError("substitution length differs from the tableau size");
  int z_level = 0;
  for (const auto& x : substitution) {
    algebra::validate(x, spec);
    if (x.is_z()) z_level = std::max(z_level, x.level);
  }
  const poly::Bracketing tree = options.bracketing ? *options.bracketing : poly::Bracketing::left_normed(n);
  if (tree.leaves() != n) throw DomainError("bracketing arity differs from the tableau size");

  CachedSizes sizes;
  for (std::int64_t level = 1; level <= z_level + n + 1; ++level) sizes.sizes.push_back(spec.level_size(level));

  auto evaluate = [&](const std::vector<int>& mapping) -> std::optional<BasisElement> {
    return poly::evaluate_tree<BasisElement>(
        tree.postfix(),
        [&](int leaf) -> std::optional<BasisElement> {
          return substitution[static_cast<std::size_t>(mapping[static_cast<std::size_t>(leaf + 1)] - 1)];
        },
        [&](const BasisElement& x, const BasisElement& y) { return algebra::multiply_atoms(x, y, sizes); });
  };

  bool row_constant = true;
  for (const auto& row : tableau.rows()) {
    for (const int e : row) {
      if (substitution[static_cast<std::size_t>(e - 1)] != substitution[static_cast<std::size_t>(row[0] - 1)]) {
        row_constant = false;
      }
    }
  }

  const auto cols = tableau.columns();
  const auto column_groups = groups_of(cols, true);
  AlgebraElement out;

  if (row_constant && !options.full_double_sum) {
    std::map<BasisElement, long long> tally;
    for_each_group_element(column_groups, n, [&](const std::vector<int>& tau, int sign) {
      if (const auto v = evaluate(tau)) tally[*v] += sign;
    });
    mpz_class row_order = 1;
    for (const auto& row : tableau.rows()) row_order *= factorial(static_cast<int>(row.size()));
    for (const auto& [atom, c] : tally) out.add_term(atom, mpq_class(mpz_class(static_cast<long>(c)) * row_order));
    return out;
  }

  const std::size_t work = group_order(tableau.rows()) * group_order(cols);
  if (work > options.double_sum_limit) {
    throw EngineError("double sum over " + std::to_string(work) + " pairs exceeds the limit");
  }
  const auto row_groups = groups_of(tableau.rows(), false);
  std::map<BasisElement, long long> tally;
  std::vector<int> composed(static_cast<std::size_t>(n) + 1);
  for_each_group_element(row_groups, n, [&](const std::vector<int>& sigma, int) {
    for_each_group_element(column_groups, n, [&](const std::vector<int>& tau, int sign) {
      for (int i = 0; i <= n; ++i) composed[static_cast<std::size_t>(i)] = sigma[static_cast<std::size_t>(tau[static_cast<std::size_t>(i)])];
      if (const auto v = evaluate(composed)) tally[*v] += sign;
    });
  });
  for (const auto& [atom, c] : tally) out.add_term(atom, mpq_class(static_cast<long>(c)));
  return out;
}

Admissibility family_admissible(const rep::Partition& lambda, int m, const words::WordSpec& word) {
  Admissibility out;
  if (lambda.height() != 4 || lambda[3] != 1) return out;
  out.R = lambda[2];
  const auto sums = prefix_sums(word, static_cast<std::size_t>(out.R));
  const int long_row = (m - 1) * out.R + sums[static_cast<std::size_t>(out.R)];
  if (lambda[1] == long_row && lambda[0] >= long_row) {
    out.ok = true;
    out.form = Form::FirstRowLong;
  } else if (lambda[0] == long_row && long_row > lambda[1] && lambda[1] >= out.R) {
    out.ok = true;
    out.form = Form::SecondRowLong;
  }
  return out;
}

WitnessSequence approach_sequence(int m, const words::WordSpec& word, double eps, int count,
                                 const SequenceOptions& options) {
  ensure_precision();
  if (m < 2) throw DomainError("m must be at least 2");
  if (!(eps > 0)) throw DomainError("epsilon must be positive");
  if (count < 1) throw DomainError("count must be positive");
  if (options.r_start < 1) throw DomainError("r must start at 1 or above");

  WitnessSequence seq;
  const Real alpha = word.slope().real();
  const Real beta = 1 / (m + alpha);
  seq.target = phi::phi0(beta) + 1;
  const Real eps_insert = Real(eps) * Real(options.insertion_share);
  seq.k = phi::insertion_modulus(2, eps_insert);

  std::vector<int> rs;
  for (int i = 0; i < count; ++i) {
    rs.push_back(options.schedule == Schedule::Dense ? options.r_start + i : options.r_start << i);
  }
  const auto sums = prefix_sums(word, static_cast<std::size_t>(seq.k) * static_cast<std::size_t>(rs.back()) + 1);
  const auto W = [&](long long r) { return sums[static_cast<std::size_t>(r)]; };

  seq.slope_constant = 0;
  for (std::size_t r = 1; r < sums.size(); ++r) {
    const Real dev = abs(Real(W(static_cast<long long>(r))) - Real(static_cast<long>(r)) * alpha);
    if (dev > seq.slope_constant) seq.slope_constant = dev;
  }

  std::vector<long long> base_sizes;
  seq.q_min = seq.k;
  for (int idx = 0; idx < count; ++idx) {
    const int r = rs[static_cast<std::size_t>(idx)];
    const int n = m * r + W(r);
    const rep::Partition base({(m - 1) * r + W(r), r});
    base_sizes.push_back(n);

    WitnessPoint pt;
    pt.index = idx + 1;
    pt.r = r;
    const auto ins = phi::insert_row(base, eps_insert, Real(1) / (m + 1));
    seq.q_min = std::min(seq.q_min, ins.q);
    seq.q_max = std::max(seq.q_max, ins.q);
    const int R = ins.q * r;
    const int long_row = (m - 1) * R + W(R);
    std::vector<int> parts;
    if (ins.i == 1) {
      pt.branch = "new_first";
      parts = {ins.mu[0], long_row, R, 1};
      if (!(parts[0] >= parts[1] && parts[1] >= parts[2])) pt.diagnostic = "rows out of order after correction";
    } else if (ins.i == 2) {
      pt.branch = "new_second";
      parts = {long_row, ins.mu[1], R, 1};
      if (!(parts[0] > parts[1] && parts[1] >= parts[2])) pt.diagnostic = "rows out of order after correction";
    } else {
      pt.branch = "new_third";
      pt.diagnostic = "inserted row landed in the third position";
    }

    if (pt.diagnostic.empty()) {
      pt.lambda = rep::Partition(parts);
      pt.shape_ok = family_admissible(pt.lambda, m, word).ok;
      if (!pt.shape_ok) pt.diagnostic = "shape outside the nonvanishing family";
    }
    if (!pt.shape_ok) pt.lambda = base;
    pt.n = pt.lambda.size();
    pt.phi_gap = abs(phi::phi_partition(pt.lambda).value - seq.target);
    seq.points.push_back(std::move(pt));
  }

  int i0 = 0;
  for (int idx = count - 1; idx >= 0; --idx) {
    const auto& p = seq.points[static_cast<std::size_t>(idx)];
    if (!(p.shape_ok && p.phi_gap < Real(eps))) break;
    i0 = idx + 1;
  }
  seq.i0 = i0;
  seq.max_gap_after_i0 = 0;
  long long c2 = 0;
  if (i0 > 0) {
    for (int idx = i0 - 1; idx < count; ++idx) {
      const auto& p = seq.points[static_cast<std::size_t>(idx)];
      if (p.phi_gap > seq.max_gap_after_i0) seq.max_gap_after_i0 = p.phi_gap;
      c2 = std::max(c2, std::llabs(p.n - seq.k * base_sizes[static_cast<std::size_t>(idx)]) + 1);
      if (idx >= i0) seq.max_step = std::max(seq.max_step, p.n - seq.points[static_cast<std::size_t>(idx - 1)].n);
    }
  }
  seq.c2 = c2;
  seq.c_bound = 2 * c2 + static_cast<long long>(seq.k) * (m + 1);
  seq.note = "nonvanishing of m_lambda for these shapes rests on the tableau construction, not on direct computation";
  if (options.schedule == Schedule::Doubling) seq.note += "; step bound applies to the dense schedule only";
  return seq;
}

std::vector<SmallFamilyCheck> small_family_check(int m, const words::WordSpec& word, int n_max,
                                                 const poly::EngineOptions& options) {
  const algebra::AlgebraSpec spec(m, word, true);
  std::map<int, rep::CocharacterTable> tables;
  std::vector<SmallFamilyCheck> out;
  const auto sums = prefix_sums(word, static_cast<std::size_t>(std::max(n_max, 1)));
  for (int r = 1; m * r + sums[static_cast<std::size_t>(r)] + 2 <= n_max; ++r) {
    const int long_row = (m - 1) * r + sums[static_cast<std::size_t>(r)];
    for (int j = 1; j + m * r + sums[static_cast<std::size_t>(r)] + 1 <= n_max; ++j) {
      for (const Form form : {Form::FirstRowLong, Form::SecondRowLong}) {
        const bool ok = form == Form::FirstRowLong ? j >= long_row : (long_row > j && j >= r);
        if (!ok) continue;
        SmallFamilyCheck c;
        c.lambda = family_shape(m, word, r, j, form);
        c.form = form;
        c.r = r;
        c.j = j;
        const int n = c.lambda.size();
        auto it = tables.find(n);
        if (it == tables.end()) it = tables.emplace(n, rep::cocharacter(n, 4, spec, options)).first;
        c.multiplicity = it->second.multiplicity(c.lambda);
        out.push_back(c);
      }
    }
  }
  return out;
}

UpperBoundAudit upper_bound_audit(const rep::CocharacterTable& table, const algebra::AlgebraSpec& spec, double delta) {
  ensure_precision();
  UpperBoundAudit out;
  out.n = table.n;
  out.bound = phi::exp_formula(spec.m, spec.word.slope()).unital + Real(delta);
  out.max_phi = 0;
  for (const auto& e : table.entries) {
    if (e.multiplicity == 0) continue;
    if (e.phi > out.max_phi) {
      out.max_phi = e.phi;
      out.argmax = e.lambda.to_string();
    }
  }
  out.slack = out.bound - out.max_phi;
  out.pass = out.max_phi < out.bound;
  return out;
}

}  // namespace pilab::witness
