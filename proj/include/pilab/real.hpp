#pragma once

// High-precision reals shared by the word generator and the entropy functions.
//
// The working precision is process-wide: it is read once from
// PILAB_PRECISION_BITS (default 160) and never drops below 128 bits, which the
// mechanical-word floor guard relies on.

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include <string>

namespace pilab {

using Real = boost::multiprecision::mpfr_float;

/// Working precision in bits. Initializes the MPFR default on first call.
unsigned precision_bits();

/// Call before constructing any Real; idempotent and thread-safe.
void ensure_precision();

Real to_real(const mpq_class& q);
Real to_real(const mpz_class& z);

/// Decimal rendering with `digits` significant digits.
std::string format_real(const Real& x, int digits = 20);

}  // namespace pilab
