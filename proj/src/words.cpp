#include "pilab/words.hpp"

#include "pilab/error.hpp"

#include <algorithm>
#include <cctype>
#include <mpfr.h>

namespace pilab::words {

namespace {

// Recursive-descent evaluator for slope expressions. Values stay rational until
// an irrational square root forces a switch to Real.
class SlopeParser {
 public:
  using Value = std::variant<mpq_class, Real>;

  explicit SlopeParser(std::string_view text) : text_(text) {}

  Value parse() {
    Value v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return v;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("cannot parse slope '" + std::string(text_) + "': " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static Real as_real(const Value& v) {
    if (const auto* q = std::get_if<mpq_class>(&v)) return to_real(*q);
    return std::get<Real>(v);
  }

  template <class QOp, class ROp>
  static Value combine(const Value& a, const Value& b, QOp qop, ROp rop) {
    if (std::holds_alternative<mpq_class>(a) && std::holds_alternative<mpq_class>(b)) {
      return Value{qop(std::get<mpq_class>(a), std::get<mpq_class>(b))};
    }
    return Value{rop(as_real(a), as_real(b))};
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (accept('+')) {
        v = combine(v, term(), [](const mpq_class& x, const mpq_class& y) { return mpq_class(x + y); },
                    [](const Real& x, const Real& y) { return Real(x + y); });
      } else if (accept('-')) {
        v = combine(v, term(), [](const mpq_class& x, const mpq_class& y) { return mpq_class(x - y); },
                    [](const Real& x, const Real& y) { return Real(x - y); });
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      if (accept('*')) {
        v = combine(v, unary(), [](const mpq_class& x, const mpq_class& y) { return mpq_class(x * y); },
                    [](const Real& x, const Real& y) { return Real(x * y); });
      } else if (accept('/')) {
        Value d = unary();
        const bool zero = std::holds_alternative<mpq_class>(d) ? std::get<mpq_class>(d) == 0
                                                               : std::get<Real>(d) == 0;
        if (zero) fail("division by zero");
        v = combine(v, d, [](const mpq_class& x, const mpq_class& y) { return mpq_class(x / y); },
                    [](const Real& x, const Real& y) { return Real(x / y); });
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (accept('-')) {
      Value v = unary();
      if (auto* q = std::get_if<mpq_class>(&v)) return Value{mpq_class(-*q)};
      return Value{Real(-std::get<Real>(v))};
    }
    if (accept('+')) return unary();
    return primary();
  }

  Value primary() {
    skip_space();
    if (accept('(')) {
      Value v = expr();
      if (!accept(')')) fail("missing ')'");
      return v;
    }
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!accept('(')) fail("expected '(' after sqrt");
      Value v = expr();
      if (!accept(')')) fail("missing ')'");
      return square_root(v);
    }
    return number();
  }

  Value square_root(const Value& v) {
    if (const auto* q = std::get_if<mpq_class>(&v)) {
      if (*q < 0) fail("square root of a negative number");
      if (mpz_perfect_square_p(q->get_num_mpz_t()) && mpz_perfect_square_p(q->get_den_mpz_t())) {
        return Value{mpq_class(sqrt(mpz_class(q->get_num())), sqrt(mpz_class(q->get_den())))};
      }
    }
    Real r = as_real(v);
    if (r < 0) fail("square root of a negative number");
    return Value{Real(boost::multiprecision::sqrt(r))};
  }

  Value number() {
    skip_space();
    const std::size_t start = pos_;
    std::string digits;
    std::size_t frac_digits = 0;
    bool seen_point = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits.push_back(c);
        if (seen_point) ++frac_digits;
      } else if (c == '.' && !seen_point) {
        seen_point = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (digits.empty()) {
      pos_ = start;
      fail("expected a number");
    }
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
    mpq_class q(num, den);
    q.canonicalize();
    return Value{q};
  }
};

}  // namespace

Slope::Slope(mpq_class q) : value_(std::move(q)) {
  std::get<mpq_class>(value_).canonicalize();
}

Slope::Slope(Real value, std::string source) : value_(RealValue{std::move(value), std::move(source)}) {}

const mpq_class& Slope::rational() const {
  if (!is_rational()) throw DomainError("slope is not rational");
  return std::get<mpq_class>(value_);
}

Real Slope::real() const {
  if (is_rational()) return to_real(std::get<mpq_class>(value_));
  return std::get<RealValue>(value_).value;
}

std::string Slope::to_string() const {
  if (is_rational()) return std::get<mpq_class>(value_).get_str();
  return std::get<RealValue>(value_).source;
}

mpz_class Slope::floor_affine(std::uint64_t i, const Slope& offset) const {
  if (is_rational() && offset.is_rational()) {
    mpq_class x = rational() * mpz_class(std::to_string(i)) + offset.rational();
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return f;
  }
  ensure_precision();
  Real x = real() * Real(std::to_string(i)) + offset.real();
  Real f = boost::multiprecision::floor(x);
  const Real frac = x - f;
  // accumulated rounding error of one product and one sum, generously padded
  const Real guard = Real(std::to_string(i + 2)) * boost::multiprecision::ldexp(Real(1), 8 - static_cast<int>(precision_bits()));
  if (i != 0 && (frac < guard || 1 - frac < guard)) {
    throw EngineError("mechanical word floor at i=" + std::to_string(i) +
                      " is within the precision guard of an integer; increase PILAB_PRECISION_BITS "
                      "or use an exact slope");
  }
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), f.backend().data(), MPFR_RNDD);
  return z;
}

Slope parse_slope(std::string_view text) {
  ensure_precision();
  SlopeParser parser(text);
  auto v = parser.parse();
  if (auto* q = std::get_if<mpq_class>(&v)) return Slope(*q);
  return Slope(std::get<Real>(v), std::string(text));
}

WordSpec WordSpec::periodic(Bits pattern) {
  if (pattern.empty()) throw DomainError("periodic pattern must be nonempty");
  for (auto b : pattern) {
    if (b > 1) throw DomainError("periodic pattern must be binary");
  }
  if (std::all_of(pattern.begin(), pattern.end(), [](auto b) { return b == 0; })) {
    throw DomainError("periodic pattern must be nonzero");
  }
  return WordSpec(Periodic{std::move(pattern)});
}

WordSpec WordSpec::mechanical(Slope alpha, Slope rho) {
  ensure_precision();
  const Real a = alpha.real();
  if (!(a > 0) || a > 1) throw DomainError("mechanical slope must lie in (0,1], got " + alpha.to_string());
  const Real r = rho.real();
  if (r < 0 || !(r < 1)) throw DomainError("mechanical intercept must lie in [0,1), got " + rho.to_string());

  if (alpha.is_rational() && rho.is_rational() &&
      alpha.rational().get_den() <= mpz_class(static_cast<unsigned long>(kMaxMaterializedPeriod))) {
    const std::uint64_t q = alpha.rational().get_den().get_ui();
    Bits period(q);
    mpz_class prev = alpha.floor_affine(1, rho);
    for (std::uint64_t i = 1; i <= q; ++i) {
      mpz_class next = alpha.floor_affine(i + 1, rho);
      period[i - 1] = static_cast<std::uint8_t>(mpz_class(next - prev).get_ui());
      prev = next;
    }
    return periodic(std::move(period));
  }
  return WordSpec(Mechanical{std::move(alpha), std::move(rho)});
}

std::uint8_t WordSpec::letter(std::uint64_t i) const {
  if (i == 0) throw DomainError("word letters are indexed from 1");
  if (const auto* p = std::get_if<Periodic>(&kind_)) return p->pattern[(i - 1) % p->pattern.size()];
  const auto& mech = std::get<Mechanical>(kind_);
  mpz_class d = mech.alpha.floor_affine(i + 1, mech.rho) - mech.alpha.floor_affine(i, mech.rho);
  return static_cast<std::uint8_t>(d.get_ui());
}

Slope WordSpec::slope() const {
  if (const auto* p = std::get_if<Periodic>(&kind_)) {
    const auto ones = std::count(p->pattern.begin(), p->pattern.end(), std::uint8_t{1});
    return Slope(mpq_class(static_cast<long>(ones), static_cast<unsigned long>(p->pattern.size())));
  }
  return std::get<Mechanical>(kind_).alpha;
}

std::optional<std::uint64_t> WordSpec::period_bound() const {
  if (const auto* p = std::get_if<Periodic>(&kind_)) return p->pattern.size();
  const auto& alpha = std::get<Mechanical>(kind_).alpha;
  if (alpha.is_rational() && alpha.rational().get_den().fits_ulong_p()) {
    return alpha.rational().get_den().get_ui();
  }
  return std::nullopt;
}

std::string WordSpec::to_string() const {
  if (const auto* p = std::get_if<Periodic>(&kind_)) return "periodic:" + to_ascii(p->pattern);
  const auto& mech = std::get<Mechanical>(kind_);
  return "mechanical:alpha=" + mech.alpha.to_string() + ",rho=" + mech.rho.to_string();
}

WordSpec parse_word_spec(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw DomainError("word spec needs a kind prefix: " + std::string(text));
  const auto kind = text.substr(0, colon);
  const auto body = text.substr(colon + 1);
  if (kind == "periodic") return WordSpec::periodic(from_ascii(body));
  if (kind != "mechanical") throw DomainError("unknown word kind: " + std::string(kind));

  std::optional<Slope> alpha;
  Slope rho;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    auto comma = body.find(',', pos);
    if (comma == std::string_view::npos) comma = body.size();
    const auto item = body.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw DomainError("expected key=value in word spec: " + std::string(item));
    const auto key = item.substr(0, eq);
    const auto value = item.substr(eq + 1);
    if (key == "alpha") {
      alpha = parse_slope(value);
    } else if (key == "rho") {
      rho = parse_slope(value);
    } else {
      throw DomainError("unknown mechanical word key: " + std::string(key));
    }
    pos = comma + 1;
  }
  if (!alpha) throw DomainError("mechanical word spec needs alpha");
  return WordSpec::mechanical(*alpha, rho);
}

Bits generate_prefix(const WordSpec& spec, std::size_t n) {
  if (n == 0) throw DomainError("prefix length must be positive");
  Bits out(n);
  if (spec.is_periodic()) {
    const auto& pattern = spec.as_periodic().pattern;
    for (std::size_t i = 0; i < n; ++i) out[i] = pattern[i % pattern.size()];
    return out;
  }
  const auto& mech = spec.as_mechanical();
  mpz_class prev = mech.alpha.floor_affine(1, mech.rho);
  for (std::size_t i = 1; i <= n; ++i) {
    mpz_class next = mech.alpha.floor_affine(i + 1, mech.rho);
    out[i - 1] = static_cast<std::uint8_t>(mpz_class(next - prev).get_ui());
    prev = std::move(next);
  }
  return out;
}

std::string to_ascii(const Bits& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

Bits from_ascii(std::string_view text) {
  Bits bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw DomainError("bit string may contain only 0 and 1: " + std::string(text));
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return bits;
}

Complexity complexity(const WordSpec& spec, std::size_t L, std::size_t prefix_budget) {
  if (L == 0) throw DomainError("factor length must be positive");
  FactorSet fs;
  fs.length = L;

  if (spec.is_periodic()) {
    const auto& pattern = spec.as_periodic().pattern;
    const std::size_t T = pattern.size();
    for (std::size_t s = 0; s < T; ++s) {
      Bits f(L);
      for (std::size_t t = 0; t < L; ++t) f[t] = pattern[(s + t) % T];
      fs.factors.insert(std::move(f));
    }
    fs.certified = true;
    fs.target = fs.factors.size();
    fs.scanned_prefix = T + L - 1;
    return Complexity{fs.factors.size(), std::move(fs)};
  }

  fs.target = L + 1;
  if (auto q = spec.period_bound()) fs.target = std::min<std::size_t>(fs.target, *q);

  std::size_t previous = 0;
  Bits prefix;
  for (std::size_t len = 4 * (L + 2); len <= prefix_budget; len *= 2) {
    prefix = generate_prefix(spec, len);
    for (std::size_t s = fs.scanned_prefix >= L ? fs.scanned_prefix - L + 1 : 0; s + L <= len; ++s) {
      fs.factors.emplace(prefix.begin() + static_cast<std::ptrdiff_t>(s),
                         prefix.begin() + static_cast<std::ptrdiff_t>(s + L));
    }
    fs.scanned_prefix = len;
    const std::size_t count = fs.factors.size();
    if (count == previous && count == fs.target) {
      fs.certified = true;
      break;
    }
    previous = count;
  }
  return Complexity{fs.factors.size(), std::move(fs)};
}

mpq_class slope_partial(const WordSpec& spec, std::size_t n) {
  const Bits prefix = generate_prefix(spec, n);
  const auto ones = std::count(prefix.begin(), prefix.end(), std::uint8_t{1});
  mpq_class q(static_cast<long>(ones), static_cast<unsigned long>(n));
  q.canonicalize();
  return q;
}

}  // namespace pilab::words
