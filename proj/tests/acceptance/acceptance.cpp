#include "naive_oracle.hpp"
#include "pilab/error.hpp"
#include "pilab/phi.hpp"
#include "pilab/polyspace.hpp"
#include "pilab/reptheory.hpp"
#include "pilab/witness.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

using namespace pilab;

namespace {

const char* kGolden = "mechanical:alpha=(3-sqrt(5))/2";
const std::vector<std::string> kWords{"periodic:01", kGolden};

struct Outcome {
  bool pass = true;
  std::string detail;
};

algebra::AlgebraSpec spec_of(const std::string& w, bool unital, int m = 2) {
  return algebra::AlgebraSpec(m, words::parse_word_spec(w), unital);
}

oracle::Model model_of(const std::string& w, bool unital, int levels) {
  const auto letters = w == kGolden ? oracle::mechanical_letters((3.0L - std::sqrt(5.0L)) / 2, levels)
                                    : oracle::periodic_letters(w.substr(w.find(':') + 1), levels);
  return oracle::make_model(2, letters, unital);
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Cocharacter tables shared by the identity and strip criteria.
std::map<std::pair<std::string, bool>, std::vector<std::pair<rep::CocharacterTable, std::size_t>>> tables;

Outcome oracle_equivalence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream d;
  for (const auto& w : kWords) {
    for (const bool unital : {false, true}) {
      const auto md = model_of(w, unital, 12);
      d << (unital ? "A#(" : "A(") << w << "):";
      for (int n = 1; n <= 4; ++n) {
        const auto engine = poly::codimension(n, spec_of(w, unital)).value;
        const auto brute = oracle::codimension(md, n);
        d << " " << engine;
        if (engine != brute) {
          o.pass = false;
          d << "!=" << brute;
        }
      }
      d << "; ";
    }
  }
  const double secs = since(t0);
  if (secs > 120) o.pass = false;
  d << "time " << static_cast<int>(secs) << "s";
  o.detail = d.str();
  return o;
}

Outcome cross_module_identity() {
  Outcome o;
  std::ostringstream d;
  for (const auto& w : kWords) {
    for (const bool unital : {false, true}) {
      const auto spec = spec_of(w, unital);
      const int top = unital ? 6 : 8;
      const int width = rep::default_strip(spec) + 1;
      auto& list = tables[{w, unital}];
      for (int n = 1; n <= top; ++n) {
        const poly::MultilinearSystem system(n, spec);
        auto table = rep::cocharacter(system, width);
        const auto c = system.codimension().rank;
        std::int64_t sum = 0;
        for (const auto& e : table.entries) sum += e.multiplicity;
        if (table.c_n_check != mpz_class(static_cast<unsigned long>(c)) || sum != table.colength) {
          o.pass = false;
          d << spec.to_string() << " n=" << n << " mismatch; ";
        }
        list.emplace_back(std::move(table), c);
      }
      d << spec.to_string() << " n<=" << top << " l_n=" << list.back().first.colength << "; ";
    }
  }
  o.detail = d.str();
  return o;
}

Outcome identity_and_strip() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream d;
  std::size_t substitutions = 0;
  for (const auto& w : kWords) {
    const auto md = model_of(w, false, 10);
    const auto A = static_cast<int>(md.atoms.size());
    for (int x = 0; x < A; ++x)
      for (int y = 0; y < A; ++y)
        for (int z = 0; z < A; ++z) {
          ++substitutions;
          const int yz = md.mul(y, z);
          if (yz >= 0 && md.mul(x, yz) >= 0) o.pass = false;
        }
    poly::EngineOptions all_rows;
    all_rows.rows = poly::Mode::All;
    const poly::MultilinearSystem system(3, spec_of(w, false), all_rows);
    std::optional<std::size_t> row;
    for (std::size_t r = 0; r < system.monomials().size(); ++r) {
      if (system.monomials().monomial(r).to_string() == "x1(x2x3)") row = r;
    }
    if (!row) {
      o.pass = false;
      d << "x1(x2x3) row missing; ";
      continue;
    }
    for (std::size_t k = 0; k < system.matrix().nonzeros(); ++k) {
      if (system.matrix().row_idx[k] == *row) o.pass = false;
    }
  }
  d << "x1(x2x3) vanishes on " << substitutions << " substitutions; ";
  std::size_t checked = 0;
  for (const auto& [key, list] : tables) {
    const int forbidden = key.second ? 5 : 4;
    for (const auto& [table, c] : list) {
      for (const auto& e : table.entries) {
        if (e.lambda.height() != forbidden) continue;
        ++checked;
        if (e.multiplicity != 0) {
          o.pass = false;
          d << "nonzero m at " << e.lambda.to_string() << "; ";
        }
      }
    }
  }
  d << checked << " shapes of forbidden height have m=0; time " << static_cast<int>(since(t0)) << "s";
  o.detail = d.str();
  return o;
}

long double extension(const std::vector<long double>& z, long double t) {
  long double h = 0;
  for (const auto v : z) {
    const long double x = t * v;
    if (x > 0) h -= x * std::log(x);
  }
  if (t < 1) h -= (1 - t) * std::log(1 - t);
  return std::exp(h);
}

Outcome golden_section_scan() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.001, 1);
  long double worst_v = 0, worst_t = 0;
  for (int s = 0; s < 100; ++s) {
    const int d = 1 + s % 4;
    std::vector<long double> z;
    long double sum = 0;
    for (int i = 0; i < d; ++i) sum += z.emplace_back(u(rng));
    for (auto& v : z) v /= sum;
    const long double g = (std::sqrt(5.0L) - 1) / 2;
    long double lo = 0, hi = 1;
    while (hi - lo > 1e-15L) {
      const long double a = hi - g * (hi - lo);
      const long double b = lo + g * (hi - lo);
      if (extension(z, a) < extension(z, b)) {
        lo = a;
      } else {
        hi = b;
      }
    }
    const long double t = (lo + hi) / 2;
    std::vector<Real> zr;
    for (const auto v : z) zr.emplace_back(static_cast<double>(v));
    Real total = 0;
    for (const auto& v : zr) total += v;
    for (auto& v : zr) v /= total;
    const auto closed = phi::maximize_extension(zr);
    const long double dv = std::fabs(extension(z, t) - closed.max_value.convert_to<long double>());
    const long double dt = std::fabs(t - closed.t_star.convert_to<long double>());
    worst_v = std::max(worst_v, dv);
    worst_t = std::max(worst_t, dt);
  }
  o.pass = worst_v < 1e-9L && worst_t < 1e-6L;
  std::ostringstream d;
  d << "100 cases, max |value diff| " << static_cast<double>(worst_v) << ", max |t diff| " << static_cast<double>(worst_t);
  o.detail = d.str();
  return o;
}

Outcome row_insertion() {
  Outcome o;
  std::ostringstream d;
  for (const char* eps : {"0.1", "0.01"}) {
    std::map<std::vector<int>, int> ks;
    Real worst = 0;
    for (const std::vector<int>& parts : {std::vector<int>{50, 50}, {500, 500}, {60, 40}, {75, 25}}) {
      const rep::Partition lambda(parts);
      const auto ins = phi::insert_row(lambda, Real(eps), Real(parts.back()) / lambda.size());
      const Real gap = abs(phi::phi_partition(ins.mu).value - phi::phi_partition(lambda).value - 1);
      if (!(gap < Real(eps))) o.pass = false;
      if (gap > worst) worst = gap;
      ks[parts] = ins.k;
    }
    if (ks[{50, 50}] != ks[{500, 500}]) o.pass = false;
    d << "eps=" << eps << ": k=" << ks[{50, 50}] << " max gap " << format_real(worst, 4) << "; ";
  }
  o.detail = d.str();
  return o;
}

Outcome strip_phi_bound() {
  Outcome o;
  std::mt19937_64 rng(99);
  int failures = 0;
  for (int s = 0; s < 200; ++s) {
    const int n = std::uniform_int_distribution<int>(100, 120)(rng);
    const int h = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<int> cuts(static_cast<std::size_t>(n - 1));
    std::iota(cuts.begin(), cuts.end(), 1);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(static_cast<std::size_t>(h - 1));
    cuts.push_back(0);
    cuts.push_back(n);
    std::sort(cuts.begin(), cuts.end());
    std::vector<int> parts;
    for (std::size_t i = 1; i < cuts.size(); ++i) parts.push_back(cuts[i] - cuts[i - 1]);
    std::sort(parts.rbegin(), parts.rend());
    if (!phi::strip_bound_check(rep::Partition(parts), 4).pass) ++failures;
  }
  o.pass = failures == 0;
  o.detail = "200 samples, " + std::to_string(failures) + " failures";
  return o;
}

Outcome tableau_symmetrizers() {
  Outcome o;
  std::ostringstream d;
  int total = 0, matched = 0, compared = 0;
  std::string mismatches;
  auto check = [&](int m, const std::string& w, int r, int j, witness::Form form) {
    std::optional<witness::TableauWitness> tw;
    try {
      tw = witness::build_tableau(m, words::parse_word_spec(w), r, j, form);
    } catch (const DomainError&) {
      return false;
    }
    const auto spec = spec_of(w, true, m);
    const auto value = witness::evaluate_symmetrizer(tw->tableau, tw->substitution, spec);
    const algebra::AlgebraElement expected(algebra::BasisElement::z(r + 1, 1), mpq_class(tw->expected));
    ++total;
    if (value == expected) {
      ++matched;
    } else {
      mismatches += " m=" + std::to_string(m) + "," + w + ",r=" + std::to_string(r) + ",j=" + std::to_string(j) +
                    " got " + (value.is_zero() ? std::string("0") : value.to_string()) + " want " + expected.to_string() + ";";
    }
    if (tw->tableau.size() <= 5) {
      witness::SymmetrizerOptions full;
      full.full_double_sum = true;
      ++compared;
      if (witness::evaluate_symmetrizer(tw->tableau, tw->substitution, spec, full) != value) {
        o.pass = false;
        d << "double sum disagrees at " << tw->tableau.to_string() << "; ";
      }
    }
    return true;
  };
  for (const int m : {2, 3}) {
    for (const std::string w : {"periodic:01", "periodic:10"}) {
      for (int j = 1; j <= 4; ++j) {
        check(m, w, 1, j, witness::Form::FirstRowLong);
        check(m, w, 1, j, witness::Form::SecondRowLong);
      }
    }
  }
  check(2, "periodic:01", 2, 3, witness::Form::FirstRowLong);
  if (matched != total) o.pass = false;
  d << matched << "/" << total << " cases equal j! r! (n0-r-1)! z(r+1,1); " << compared
    << " double-sum comparisons";
  if (!mismatches.empty()) d << "; mismatches:" << mismatches;
  o.detail = d.str();
  return o;
}

Outcome approach_sequence_check() {
  Outcome o;
  std::ostringstream d;
  for (const auto& w : kWords) {
    const auto word = words::parse_word_spec(w);
    for (const auto schedule : {witness::Schedule::Doubling, witness::Schedule::Dense}) {
      witness::SequenceOptions opts;
      opts.schedule = schedule;
      const auto seq = witness::approach_sequence(2, word, 0.1, 10, opts);
      const bool dense = schedule == witness::Schedule::Dense;
      bool ok = seq.i0 >= 1 && seq.points.size() == 10;
      int small_points = 0;
      for (std::size_t i = 0; ok && i < seq.points.size(); ++i) {
        const auto& p = seq.points[i];
        if (p.shape_ok && !witness::family_admissible(p.lambda, 2, word).ok) ok = false;
        if (static_cast<int>(i) + 1 >= seq.i0 && !(p.shape_ok && p.phi_gap < Real("0.1"))) ok = false;
        if (p.shape_ok && p.n <= 7) {
          ++small_points;
          const auto table = rep::cocharacter(static_cast<int>(p.n), 5, algebra::AlgebraSpec(2, word, true));
          if (table.multiplicity(p.lambda) == 0) ok = false;
        }
      }
      if (dense && !(seq.max_step < seq.c_bound)) ok = false;
      o.pass = o.pass && ok;
      d << w << (dense ? " dense" : " doubling") << ": i0=" << seq.i0 << " max gap "
        << format_real(seq.max_gap_after_i0, 3);
      if (dense) d << " max step " << seq.max_step << " < C=" << seq.c_bound;
      d << " shape_ok points with n<=7: " << small_points << "; ";
    }
    const auto small = witness::small_family_check(2, word, 6);
    for (const auto& c : small) {
      if (c.multiplicity == 0) o.pass = false;
    }
    d << small.size() << " family shapes of size <= 6 have m != 0; ";
  }
  o.detail = d.str();
  return o;
}

Outcome hooks_and_kostka() {
  Outcome o;
  for (int n = 1; n <= 10; ++n) {
    mpz_class sum = 0, fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    for (const auto& p : rep::partitions(n)) sum += rep::hook_degree(p) * rep::hook_degree(p);
    if (sum != fact) o.pass = false;
  }
  std::size_t pairs = 0;
  for (int n = 1; n <= 8; ++n) {
    for (const auto& l : rep::partitions(n)) {
      if (rep::kostka(l, l.parts()) != 1) o.pass = false;
      for (const auto& mu : rep::partitions(n)) {
        ++pairs;
        if (!rep::dominates(l, mu) && rep::kostka(l, mu.parts()) != 0) o.pass = false;
      }
    }
  }
  o.detail = "sum deg^2 = n! for n<=10; " + std::to_string(pairs) + " Kostka pairs for n<=8";
  return o;
}

Outcome realization() {
  Outcome o;
  Real worst = 0;
  for (int i = 0; i < 50; ++i) {
    const Real gamma = Real("2.05") + Real(i) * Real("0.9") / 49;
    const auto r = phi::realize_exponent(gamma);
    const Real back = abs(phi::exp_formula(r.m, r.alpha).unital - gamma);
    if (back > worst) worst = back;
  }
  if (!(worst < Real("1e-9"))) o.pass = false;
  const auto exact = phi::realize_exponent(phi::phi0(Real(1) / 3) + 1);
  const bool exact_ok = exact.m == 2 && exact.alpha_rational && exact.alpha.rational() == 1;
  o.pass = o.pass && exact_ok;
  o.detail = "50-point grid max residual " + format_real(worst, 3) + "; Phi0(1/3)+1 -> m=" + std::to_string(exact.m) +
             " alpha=" + exact.alpha.to_string();
  return o;
}

Outcome trend() {
  Outcome o;
  std::ostringstream d;
  for (const auto& w : kWords) {
    const auto spec = spec_of(w, true);
    const auto target = phi::exp_formula(2, spec.word.slope());
    const Real bound = target.unital + Real("0.3");
    Real previous = 0;
    d << spec.to_string() << " roots:";
    for (const auto& [table, c] : tables[{w, true}]) {
      const Real root = boost::multiprecision::exp(boost::multiprecision::log(Real(static_cast<unsigned long>(c))) / table.n);
      if (root < previous || !(root < bound)) o.pass = false;
      previous = root;
      d << " " << format_real(root, 5);
    }
    d << " bound " << format_real(bound, 5) << "; ";
  }
  d << "finite-n evidence only, not a limit claim";
  o.detail = d.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, oracle_equivalence},
      {2, cross_module_identity},
      {3, identity_and_strip},
      {4, golden_section_scan},
      {5, row_insertion},
      {6, strip_phi_bound},
      {7, tableau_symmetrizers},
      {8, approach_sequence_check},
      {9, hooks_and_kostka},
      {10, realization},
      {11, trend},
  };
  int crashed = 0;
  for (const auto& [id, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
      ++crashed;
    }
    std::cout << "CRITERION " << id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << static_cast<int>(since(t0))
              << "s) " << o.detail << std::endl;
  }
  return crashed == 0 ? 0 : 1;
}
