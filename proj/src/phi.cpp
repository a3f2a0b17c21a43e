#include "pilab/phi.hpp"

#include "pilab/error.hpp"
#include "pilab/reptheory.hpp"

#include <optional>

namespace pilab::phi {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::exp;
using boost::multiprecision::floor;
using boost::multiprecision::log;

Real entropy(const std::vector<Real>& x) {
  Real h = 0;
  for (const auto& v : x) {
    if (v > 0) h -= v * log(v);
  }
  return h;
}

void validate_distribution(const std::vector<Real>& x) {
  if (x.empty()) throw DomainError("Phi needs at least one argument");
  Real sum = 0;
  for (const auto& v : x) {
    if (v < 0) throw DomainError("Phi arguments must be non-negative");
    sum += v;
  }
  if (abs(sum - 1) > Real("1e-12")) throw DomainError("Phi arguments must sum to 1, got " + format_real(sum));
}

// Bound on |Phi(s z, 1 - s) - Phi(t z, 1 - t)| over |s - t| <= 1/k, for every
// z with Phi(z) in [1, d] and t = Phi(z) / (Phi(z) + 1). Along this line
// d/ds ln Phi = ln(a (1 - s) / s) with a = t / (1 - t), and t lies in
// [1/2, d/(d+1)].
Real insertion_error(int d, int k) {
  const Real delta = Real(1) / k;
  const Real spread = delta * (d + 1);
  if (!(spread < 1) || !(2 * delta < 1)) return Real(d + 1);
  const Real up = -log(1 - spread) + log(1 + 2 * delta);
  const Real down = log(1 + spread) - log(1 - 2 * delta);
  const Real slope = up > down ? up : down;
  return (d + 1) * (exp(delta * slope) - 1);
}

// Best rational approximation p/q (q <= max_den) of x via continued fractions.
std::optional<mpq_class> small_rational_near(const Real& x, const Real& tolerance, unsigned long max_den) {
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Real rest = x;
  for (int step = 0; step < 64; ++step) {
    const Real fl = floor(rest);
    if (fl > Real(max_den)) break;
    const mpz_class a(fl.convert_to<long>());
    const mpz_class p2 = a * p1 + p0;
    const mpz_class q2 = a * q1 + q0;
    if (q2 > max_den) break;
    const mpq_class candidate(p2, q2);
    if (abs(to_real(candidate) - x) <= tolerance) return candidate;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const Real frac = rest - fl;
    if (frac == 0) break;
    rest = 1 / frac;
  }
  return std::nullopt;
}

}  // namespace

PhiValue phi(const std::vector<Real>& x) {
  ensure_precision();
  validate_distribution(x);
  PhiValue out;
  out.log_value = entropy(x);
  out.value = exp(out.log_value);
  out.inputs = x;
  return out;
}

PhiValue phi(const std::vector<double>& x) {
  ensure_precision();
  std::vector<Real> r;
  r.reserve(x.size());
  for (const double v : x) r.emplace_back(v);
  return phi(r);
}

PhiValue phi_partition(const rep::Partition& lambda, int d) {
  ensure_precision();
  if (lambda.size() == 0) throw DomainError("Phi of the empty partition is undefined");
  if (d != 0 && d < lambda.height()) throw DomainError("padding width below the partition height");
  std::vector<Real> x;
  const Real n = lambda.size();
  for (const int p : lambda.parts()) x.push_back(Real(p) / n);
  while (static_cast<int>(x.size()) < d) x.emplace_back(0);
  return phi(x);
}

Real phi0(const Real& beta) {
  ensure_precision();
  if (beta < 0 || beta > 1) throw DomainError("Phi0 argument must lie in [0,1]");
  return phi(std::vector<Real>{beta, 1 - beta}).value;
}

StripBoundCheck strip_bound_check(const rep::Partition& lambda, int d) {
  ensure_precision();
  if (lambda.height() > d) throw DomainError("partition height exceeds d");
  StripBoundCheck out;
  out.n = lambda.size();
  out.d = d;
  out.degree = rep::hook_degree(lambda);
  out.log_degree = log(to_real(out.degree));
  const Real log_phi = phi_partition(lambda).log_value;
  const Real log_n = log(Real(out.n));
  out.log_lower = out.n * log_phi - Real(d * d + d) * log_n;
  out.log_upper = log_n + out.n * log_phi;
  out.pass = out.log_lower <= out.log_degree && out.log_degree <= out.log_upper;
  out.in_regime = out.n >= 100;
  if (!out.in_regime) out.note = "n < 100: outside the asserted regime";
  return out;
}

Real extension_value(const std::vector<Real>& z, const Real& t) {
  std::vector<Real> x;
  x.reserve(z.size() + 1);
  for (const auto& v : z) x.push_back(t * v);
  x.push_back(1 - t);
  return exp(entropy(x));
}

Extension maximize_extension(const std::vector<Real>& z) {
  Extension out;
  out.a = phi(z).value;
  out.t_star = out.a / (out.a + 1);
  out.max_value = out.a + 1;
  return out;
}

int insertion_modulus(int d, const Real& eps) {
  ensure_precision();
  if (d < 1) throw DomainError("row insertion needs d >= 1");
  if (!(eps > 0)) throw DomainError("epsilon must be positive");
  int k = 2;
  while (k < 2 * (d + 1)) k *= 2;
  while (!(insertion_error(d, k) < eps)) {
    if (k > (1 << 28)) throw EngineError("no insertion modulus found below 2^28");
    k *= 2;
  }
  return k;
}

RowInsertion insert_row(const rep::Partition& lambda, const Real& eps, const Real& gamma_floor) {
  ensure_precision();
  if (lambda.size() == 0) throw DomainError("cannot insert a row into the empty partition");
  if (!(gamma_floor > 0)) throw DomainError("row floor must be positive");
  const int n = lambda.size();
  const int d = lambda.height();
  for (const int p : lambda.parts()) {
    if (Real(p) / n < gamma_floor) throw DomainError("row " + std::to_string(p) + " is below the floor");
  }

  RowInsertion out;
  const PhiValue base = phi_partition(lambda);
  out.phi_lambda = base.value;
  out.t_star = base.value / (base.value + 1);
  out.k = insertion_modulus(d, eps);
  out.q = static_cast<int>(boost::multiprecision::round(out.t_star * out.k).convert_to<long>());
  if (out.q < 1 || out.q >= out.k) throw EngineError("scaling factor outside (0,k)");
  if (!(abs(out.t_star - Real(out.q) / out.k) < Real(1) / out.k)) throw EngineError("t0 is not within 1/k of t*");

  const long long new_row = static_cast<long long>(n) * (out.k - out.q);
  std::vector<int> parts;
  out.i = 1;
  for (const int p : lambda.parts()) {
    if (static_cast<long long>(out.q) * p > new_row) ++out.i;
  }
  for (int j = 0; j < d; ++j) {
    if (j == out.i - 1) parts.push_back(static_cast<int>(new_row));
    parts.push_back(out.q * lambda.parts()[static_cast<std::size_t>(j)]);
  }
  if (out.i == d + 1) parts.push_back(static_cast<int>(new_row));
  for (std::size_t j = 1; j < parts.size(); ++j) {
    if (parts[j] > parts[j - 1]) throw EngineError("inserted row breaks the partition order");
  }
  out.mu = rep::Partition(std::move(parts));
  out.phi_mu = phi_partition(out.mu).value;
  out.gap = abs(out.phi_mu - out.phi_lambda - 1);
  if (!(out.gap < eps)) throw EngineError("row insertion missed the target by " + format_real(out.gap));
  return out;
}

ExponentTarget exp_formula(int m, const Real& alpha) {
  ensure_precision();
  if (m < 2) throw DomainError("m must be at least 2");
  if (!(alpha > 0) || alpha > 1) throw DomainError("slope must lie in (0,1]");
  ExponentTarget out;
  out.beta = 1 / (m + alpha);
  out.exponent = phi0(out.beta);
  out.unital = out.exponent + 1;
  return out;
}

ExponentTarget exp_formula(int m, const words::Slope& alpha) { return exp_formula(m, alpha.real()); }

Realization realize_exponent(const Real& gamma, double beta_tolerance) {
  ensure_precision();
  if (!(gamma > 2) || !(gamma < 3)) throw DomainError("target exponent must lie strictly between 2 and 3");
  if (!(beta_tolerance > 0)) throw DomainError("tolerance must be positive");
  const Real target = gamma - 1;
  Real lo = 0;
  Real hi = Real(1) / 2;
  const Real tol(beta_tolerance);
  while (hi - lo > tol) {
    const Real mid = (lo + hi) / 2;
    if (phi0(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  Realization out;
  out.beta = (lo + hi) / 2;
  Real inverse = 1 / out.beta;
  const Real uncertainty = 4 * tol / (out.beta * out.beta);
  std::optional<mpq_class> exact = small_rational_near(inverse, uncertainty, 1000);
  if (exact && !(abs(phi0(1 / to_real(*exact)) + 1 - gamma) < Real("1e-9"))) exact.reset();

  if (exact) {
    out.beta = 1 / to_real(*exact);
    mpz_class m;
    mpz_fdiv_q(m.get_mpz_t(), exact->get_num_mpz_t(), exact->get_den_mpz_t());
    if (exact->get_den() == 1) m -= 1;
    out.m = static_cast<int>(m.get_si());
    out.alpha = words::Slope(mpq_class(*exact - m));
    out.alpha_rational = true;
  } else {
    out.m = static_cast<int>(boost::multiprecision::ceil(inverse).convert_to<long>()) - 1;
    const Real alpha = inverse - out.m;
    out.alpha = words::Slope(alpha, format_real(alpha, 40));
  }
  if (out.m < 2) throw EngineError("realization produced m < 2");
  out.residual = abs(exp_formula(out.m, out.alpha).unital - gamma);
  out.word = words::WordSpec::mechanical(out.alpha);
  return out;
}

}  // namespace pilab::phi
