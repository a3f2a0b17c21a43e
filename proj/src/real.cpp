#include "pilab/real.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <sstream>

namespace pilab {

namespace {

constexpr unsigned kDefaultBits = 160;
constexpr unsigned kMinimumBits = 128;

unsigned read_precision_env() {
  unsigned bits = kDefaultBits;
  if (const char* env = std::getenv("PILAB_PRECISION_BITS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 100000) {
      bits = static_cast<unsigned>(v);
    }
  }
  return std::max(bits, kMinimumBits);
}

std::once_flag g_once;
unsigned g_bits = 0;

}  // namespace

unsigned precision_bits() {
  std::call_once(g_once, [] {
    g_bits = read_precision_env();
    // boost counts precision in decimal digits
    const unsigned digits10 = static_cast<unsigned>(g_bits * 0.30102999566398) + 2;
    Real::default_precision(digits10);
  });
  return g_bits;
}

void ensure_precision() { (void)precision_bits(); }

Real to_real(const mpq_class& q) {
  ensure_precision();
  Real num{q.get_num().get_str()};
  Real den{q.get_den().get_str()};
  return num / den;
}

Real to_real(const mpz_class& z) {
  ensure_precision();
  return Real{z.get_str()};
}

std::string format_real(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace pilab
