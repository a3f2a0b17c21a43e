#pragma once

// The entropy function Phi(x_1..x_d) = prod x_i^(-x_i) (with 0^0 = 1), its
// two-variable form Phi0, and constructions built on it.

#include "pilab/partition.hpp"
#include "pilab/real.hpp"
#include "pilab/words.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace pilab::phi {

struct PhiValue {
  Real value;
  Real log_value;  // -sum x_i ln x_i
  std::vector<Real> inputs;
};

/// Requires x_i >= 0 and |sum x_i - 1| <= 1e-12.
PhiValue phi(const std::vector<Real>& x);
PhiValue phi(const std::vector<double>& x);

/// Phi(lambda_1/n, ..., lambda_h/n), padded with zeros up to d (padding does
/// not change the value; d below the height is an error).
PhiValue phi_partition(const rep::Partition& lambda, int d = 0);

/// Phi(beta, 1 - beta).
Real phi0(const Real& beta);

struct StripBoundCheck {
  int n = 0;
  int d = 0;
  mpz_class degree;
  Real log_degree;
  Real log_lower;  // n ln Phi - (d^2 + d) ln n
  Real log_upper;  // ln n + n ln Phi
  bool pass = false;
  bool in_regime = false;  // n >= 100 and height <= d
  std::string note;
};

/// Phi(lambda)^n / n^(d^2+d) <= deg chi_lambda <= n Phi(lambda)^n, in logs.
StripBoundCheck strip_bound_check(const rep::Partition& lambda, int d);

struct Extension {
  Real a;          // Phi(z)
  Real t_star;     // a / (a + 1)
  Real max_value;  // a + 1
};

/// Maximizes t -> Phi(t z_1, ..., t z_d, 1 - t) over [0,1].
Extension maximize_extension(const std::vector<Real>& z);
Real extension_value(const std::vector<Real>& z, const Real& t);

struct RowInsertion {
  int k = 0;
  int q = 0;
  int i = 0;  // 1-based position of the new row in mu
  rep::Partition mu;
  Real t_star;
  Real phi_lambda;
  Real phi_mu;
  Real gap;  // |Phi(mu) - Phi(lambda) - 1|
};

/// Smallest power of two k >= 2(d+1) for which moving t by at most 1/k along
/// (t z, 1 - t) changes Phi by less than eps, uniformly in z.
int insertion_modulus(int d, const Real& eps);

/// Scales lambda by q and inserts a new row n(k - q) so that
/// Phi(mu) is within eps of Phi(lambda) + 1; mu is a partition of kn.
RowInsertion insert_row(const rep::Partition& lambda, const Real& eps, const Real& gamma_floor);

struct ExponentTarget {
  Real beta;      // 1 / (m + alpha)
  Real exponent;  // Phi0(beta)
  Real unital;    // Phi0(beta) + 1
};

ExponentTarget exp_formula(int m, const words::Slope& alpha);
ExponentTarget exp_formula(int m, const Real& alpha);

struct Realization {
  int m = 0;
  words::Slope alpha;
  bool alpha_rational = false;
  Real beta;
  Real residual;  // |Phi0(1/(m+alpha)) + 1 - gamma|
  words::WordSpec word = words::WordSpec::periodic({1});
};

/// Solves Phi0(beta) = gamma - 1 on (0, 1/2) by bisection and splits
/// 1/beta = m + alpha with alpha in (0, 1]. Requires 2 < gamma < 3.
Realization realize_exponent(const Real& gamma, double beta_tolerance = 1e-12);

}  // namespace pilab::phi
