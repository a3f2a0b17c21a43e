#include "pilab/reptheory.hpp"

#include "pilab/error.hpp"
#include "pilab/phi.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>
#include <thread>

namespace pilab::rep {

namespace {

using KostkaMemo = std::map<std::pair<std::vector<int>, std::size_t>, mpz_class>;

// Strips the cells holding the largest entry: a horizontal strip of size
// content.back(), then recurses on the remaining content.
mpz_class kostka_rec(const std::vector<int>& shape, std::span<const int> content, KostkaMemo& memo) {
  if (content.empty()) return shape.empty() ? 1 : 0;
  if (shape.size() > content.size()) return 0;
  const auto key = std::make_pair(shape, content.size());
  if (const auto it = memo.find(key); it != memo.end()) return it->second;

  const int strip = content.back();
  const auto rest = content.first(content.size() - 1);
  mpz_class total = 0;
  std::vector<int> inner(shape);
  auto place = [&](auto&& self, std::size_t row, int remaining) -> void {
    if (row == shape.size()) {
      if (remaining != 0) return;
      std::vector<int> trimmed(inner);
      while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
      total += kostka_rec(trimmed, rest, memo);
      return;
    }
    const int floor_part = row + 1 < shape.size() ? shape[row + 1] : 0;
    const int most = std::min(remaining, shape[row] - floor_part);
    for (int take = 0; take <= most; ++take) {
      inner[row] = shape[row] - take;
      self(self, row + 1, remaining - take);
    }
    inner[row] = shape[row];
  };
  place(place, 0, strip);
  memo.emplace(key, total);
  return total;
}

std::int64_t to_i64(std::size_t v) { return static_cast<std::int64_t>(v); }

// Number of distinct arrangements of the parts of mu (padded with zeros)
// into d slots.
std::size_t arrangements(const Partition& mu, int d) {
  std::map<int, int> counts;
  for (int i = 0; i < d; ++i) ++counts[mu[static_cast<std::size_t>(i)]];
  mpz_class total = 1;
  for (int i = 2; i <= d; ++i) total *= i;
  for (const auto& [part, c] : counts) {
    for (int i = 2; i <= c; ++i) total /= i;
  }
  return total.get_ui();
}

std::size_t homogeneous_total(const CocharacterTable& table, int d) {
  std::size_t total = 0;
  for (const auto& e : table.entries) {
    if (e.lambda.height() <= d) total += arrangements(e.lambda, d) * e.homogeneous_dim;
  }
  return total;
}

std::string str(const mpz_class& v) { return v.get_str(); }

}  // namespace

mpz_class hook_degree(const Partition& lambda) {
  const Partition conj = lambda.conjugate();
  mpz_class num = 1;
  for (int i = 2; i <= lambda.size(); ++i) num *= i;
  mpz_class hooks = 1;
  for (int r = 0; r < lambda.height(); ++r) {
    for (int c = 0; c < lambda.parts()[static_cast<std::size_t>(r)]; ++c) {
      hooks *= (lambda[static_cast<std::size_t>(r)] - c - 1) + (conj[static_cast<std::size_t>(c)] - r - 1) + 1;
    }
  }
  return num / hooks;
}

mpz_class kostka(const Partition& lambda, std::span<const int> content) {
  int sum = 0;
  for (const int c : content) {
    if (c < 0) throw DomainError("content entries must be non-negative");
    sum += c;
  }
  if (sum != lambda.size()) return 0;
  KostkaMemo memo;
  return kostka_rec(lambda.parts(), content, memo);
}

std::int64_t CocharacterTable::multiplicity(const Partition& lambda) const {
  for (const auto& e : entries) {
    if (e.lambda == lambda) return e.multiplicity;
  }
  if (lambda.height() > d) throw DomainError("partition " + lambda.to_string() + " lies outside the computed strip");
  return 0;
}

int default_strip(const algebra::AlgebraSpec& spec) { return spec.unital ? 4 : 3; }

CocharacterTable cocharacter(const poly::MultilinearSystem& system, int d, int workers) {
  if (d < 1) throw DomainError("strip width must be positive");
  CocharacterTable table;
  table.n = system.degree();
  table.d = d;
  const auto shapes = partitions(table.n, d);

  std::vector<linalg::RankCertificate> certs(shapes.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < shapes.size(); i = next++) certs[i] = system.homogeneous(shapes[i].parts());
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < shapes.size(); ++i) {
    mpz_class remaining = static_cast<unsigned long>(certs[i].rank);
    for (std::size_t j = 0; j < i; ++j) {
      const auto mult = table.entries[j].multiplicity;
      if (mult != 0) remaining -= kostka(shapes[j], shapes[i]) * mpz_class(static_cast<long>(mult));
    }
    if (remaining < 0) {
      throw EngineError("negative multiplicity for " + shapes[i].to_string() + " at n=" + std::to_string(table.n));
    }
    CocharacterEntry e;
    e.lambda = shapes[i];
    e.multiplicity = remaining.get_si();
    e.degree = hook_degree(shapes[i]);
    e.phi = phi::phi_partition(shapes[i]).value;
    e.homogeneous_dim = certs[i].rank;
    e.certificate = certs[i];
    table.colength += e.multiplicity;
    table.c_n_check += e.degree * mpz_class(static_cast<long>(e.multiplicity));
    table.entries.push_back(std::move(e));
  }
  return table;
}

CocharacterTable cocharacter(int n, int d, const algebra::AlgebraSpec& spec, const poly::EngineOptions& options) {
  const poly::MultilinearSystem system(n, spec, options);
  return cocharacter(system, d, options.workers);
}

Real max_third_row_ratio(const CocharacterTable& table) {
  ensure_precision();
  Real best = 0;
  for (const auto& e : table.entries) {
    if (e.multiplicity == 0 || e.lambda.height() < 3) continue;
    const Real r = Real(e.lambda[2]) / e.lambda[0];
    if (r > best) best = r;
  }
  return best;
}

std::vector<AuditRow> audits(const CocharacterTable& table, const poly::MultilinearSystem& system,
                             const algebra::AlgebraSpec& spec, double ratio_eps) {
  ensure_precision();
  std::vector<AuditRow> out;
  const int n = table.n;
  const int strip = default_strip(spec);
  const auto m = static_cast<std::size_t>(spec.m);

  {
    AuditRow row;
    row.name = "multiplicity_bound";
    const std::size_t w = homogeneous_total(table, table.d);
    std::int64_t worst = 0;
    for (const auto& e : table.entries) worst = std::max(worst, e.multiplicity);
    row.pass = worst <= to_i64(w);
    row.detail = "max m_lambda=" + std::to_string(worst) + " dim W_n^(" + std::to_string(table.d) + ")=" + std::to_string(w);
    out.push_back(row);
  }
  {
    AuditRow row;
    row.name = "homogeneous_bound";
    row.applicable = !spec.unital;
    const std::size_t w = homogeneous_total(table, table.d);
    const std::size_t comp = words::complexity(spec.word, static_cast<std::size_t>(n)).count;
    const std::size_t bound = static_cast<std::size_t>(table.d) * (m + 1) * static_cast<std::size_t>(n) * comp;
    row.pass = !row.applicable || w <= bound;
    row.detail = "dim W_n^(" + std::to_string(table.d) + ")=" + std::to_string(w) + " bound=" + std::to_string(bound);
    out.push_back(row);
  }
  {
    AuditRow row;
    row.name = "colength_cubic_bound";
    row.applicable = !spec.unital && table.d >= 3;
    const std::size_t w3 = homogeneous_total(table, 3);
    const std::int64_t bound = to_i64(w3) * n * n * n;
    row.pass = !row.applicable || table.colength <= bound;
    row.detail = "l_n=" + std::to_string(table.colength) + " n^3 dim W_n^(3)=" + std::to_string(bound);
    out.push_back(row);
  }
  {
    AuditRow row;
    row.name = "strip";
    row.applicable = table.d > strip;
    std::string offenders;
    for (const auto& e : table.entries) {
      if (e.lambda.height() > strip && e.multiplicity != 0) offenders += " " + e.lambda.to_string();
    }
    row.pass = offenders.empty();
    row.detail = "height <= " + std::to_string(strip) + (offenders.empty() ? "" : "; nonzero:" + offenders);
    out.push_back(row);
  }
  {
    AuditRow row;
    row.name = "shape_list";
    row.applicable = !spec.unital;
    std::string offenders;
    for (const auto& e : table.entries) {
      if (e.multiplicity == 0) continue;
      if (e.lambda.height() > 3 || (e.lambda.height() == 3 && e.lambda[2] != 1)) offenders += " " + e.lambda.to_string();
    }
    row.pass = !row.applicable || offenders.empty();
    row.detail = "nonzero shapes are (l1), (l1,l2), (l1,l2,1)" + (offenders.empty() ? "" : "; offenders:" + offenders);
    out.push_back(row);
  }
  {
    AuditRow row;
    row.name = "colength_polynomial_bound";
    row.applicable = spec.unital;
    mpz_class bound = 4 * mpz_class(static_cast<unsigned long>(m + 1));
    mpz_class base = n + 1;
    mpz_class power;
    mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), 12);
    bound *= power;
    row.pass = !row.applicable || mpz_class(static_cast<long>(table.colength)) <= bound;
    row.detail = "l_n=" + std::to_string(table.colength) + " bound=" + str(bound);
    out.push_back(row);
  }
  {
    AuditRow row;
    row.name = "third_row_ratio";
    row.applicable = spec.unital;
    const Real beta = 1 / (spec.m + spec.word.slope().real());
    const Real limit = beta / (1 - beta) + Real(ratio_eps);
    const Real worst = max_third_row_ratio(table);
    row.pass = worst < limit;
    row.detail = "max l3/l1=" + format_real(worst, 8) + " beta/(1-beta)+eps=" + format_real(limit, 8) +
                 " (finite n only, no asymptotic claim)";
    out.push_back(row);
  }
  {
    AuditRow row;
    row.name = "codimension_consistency";
    const auto c = system.codimension();
    row.pass = table.c_n_check == mpz_class(static_cast<unsigned long>(c.rank));
    row.detail = "sum m deg=" + str(table.c_n_check) + " c_n=" + std::to_string(c.rank);
    out.push_back(row);
  }
  return out;
}

PolynomialFit fit_polynomial(const std::vector<std::size_t>& dims, int T) {
  ensure_precision();
  PolynomialFit fit;
  fit.T = T;
  fit.alpha = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const Real n = Real(static_cast<unsigned long>(i + 1));
    const Real ratio = Real(static_cast<unsigned long>(dims[i])) / boost::multiprecision::pow(n, T);
    if (ratio > fit.alpha) fit.alpha = ratio;
  }
  return fit;
}

AuditRow unit_extension_audit(const PolynomialFit& fit, const std::vector<std::size_t>& unital, int d) {
  ensure_precision();
  AuditRow row;
  row.name = "unit_extension_bound";
  std::ostringstream detail;
  detail << "alpha=" << format_real(fit.alpha, 8) << " T=" << fit.T;
  for (std::size_t i = 0; i < unital.size(); ++i) {
    const Real bound = fit.alpha * boost::multiprecision::pow(Real(static_cast<unsigned long>(i + 2)), fit.T + d + 1);
    if (Real(static_cast<unsigned long>(unital[i])) > bound) {
      row.pass = false;
      detail << " fails at n=" << i + 1;
    }
  }
  row.detail = detail.str();
  return row;
}

}  // namespace pilab::rep
