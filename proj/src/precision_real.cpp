#include "codebounds/precision_real.hpp"

#include "codebounds/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace codebounds {

namespace {

mpfr_prec_t checked(Bits prec) {
  if (prec < kMinPrecision) {
    throw InputError("precision must be at least 64 bits, got " + std::to_string(prec.value));
  }
  return prec.value;
}

mpfr_prec_t joint(const Real& a, const Real& b) {
  return std::min(mpfr_get_prec(a.get()), mpfr_get_prec(b.get()));
}

// Strips the leading sign and returns digits/exponent from mpfr_get_str.
struct DecimalDigits {
  bool negative = false;
  std::string digits;
  mpfr_exp_t exp10 = 0;  // value = 0.d1d2d3... * 10^exp10
};

DecimalDigits decimal_digits(mpfr_srcptr v, int count, mpfr_rnd_t rnd) {
  DecimalDigits out;
  char* raw = mpfr_get_str(nullptr, &out.exp10, 10, static_cast<size_t>(std::max(count, 1)), v, rnd);
  std::string s(raw);
  mpfr_free_str(raw);
  if (!s.empty() && s[0] == '-') {
    out.negative = true;
    s.erase(0, 1);
  }
  out.digits = std::move(s);
  return out;
}

}  // namespace

Real::Real(Bits prec) {
  mpfr_init2(v_, checked(prec));
  mpfr_set_zero(v_, 1);
}

Real::Real(long value, Bits prec) {
  mpfr_init2(v_, checked(prec));
  mpfr_set_si(v_, value, MPFR_RNDN);
}

Real::Real(double value, Bits prec) {
  mpfr_init2(v_, checked(prec));
  mpfr_set_d(v_, value, MPFR_RNDN);
}

Real::Real(const mpz_class& value, Bits prec) {
  mpfr_init2(v_, checked(prec));
  mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& value, Bits prec, mpfr_rnd_t rnd) {
  mpfr_init2(v_, checked(prec));
  mpfr_set_q(v_, value.get_mpq_t(), rnd);
}

Real Real::parse_decimal(std::string_view text, Bits prec) {
  Real out(prec);
  std::string s(text);
  if (s.empty()) throw InputError("empty numeric literal");
  char* end = nullptr;
  mpfr_strtofr(out.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0') throw InputError("not a decimal literal: '" + s + "'");
  if (!mpfr_number_p(out.v_)) throw InputError("not a finite number: '" + s + "'");
  return out;
}

Real Real::pow2(long exponent, Bits prec) {
  Real out(prec);
  mpfr_set_ui_2exp(out.v_, 1, exponent, MPFR_RNDN);
  return out;
}

Real::Real(const Real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::with_precision(Bits prec) const {
  Real out(prec);
  mpfr_set(out.v_, v_, MPFR_RNDN);
  return out;
}

Real Real::ulp() const {
  if (is_zero()) return pow2(-precision().value, precision());
  return pow2(exponent() - precision().value, precision());
}

mpq_class Real::to_rational() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), v_);
  return q;
}

std::string Real::to_fixed(int decimals, mpfr_rnd_t rnd) const {
  // Round once, in binary, to an integer multiple of 10^-decimals.
  mpfr_t scaled;
  mpfr_prec_t extra = static_cast<mpfr_prec_t>(decimals * 3.33) + 64;
  mpfr_init2(scaled, mpfr_get_prec(v_) + extra);
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
  mpfr_mul_z(scaled, v_, p10.get_mpz_t(), MPFR_RNDN);
  mpz_class whole;
  mpfr_get_z(whole.get_mpz_t(), scaled, rnd);
  mpfr_clear(scaled);

  bool negative = whole < 0;
  mpz_class mag = abs(whole);
  std::string digits = mag.get_str();
  if (static_cast<int>(digits.size()) <= decimals) digits.insert(0, static_cast<size_t>(decimals) + 1 - digits.size(), '0');
  std::string out = negative ? "-" : "";
  out += digits.substr(0, digits.size() - static_cast<size_t>(decimals));
  if (decimals > 0) {
    out += '.';
    out += digits.substr(digits.size() - static_cast<size_t>(decimals));
  }
  return out;
}

std::string Real::to_scientific(int digits, mpfr_rnd_t rnd) const {
  if (is_zero()) return digits > 1 ? "0." + std::string(static_cast<size_t>(digits - 1), '0') + "e+00" : "0e+00";
  DecimalDigits d = decimal_digits(v_, digits, rnd);
  std::string out = d.negative ? "-" : "";
  out += d.digits[0];
  if (d.digits.size() > 1) {
    out += '.';
    out += d.digits.substr(1);
  }
  long e = static_cast<long>(d.exp10) - 1;
  char buf[32];
  std::snprintf(buf, sizeof buf, "e%c%02ld", e < 0 ? '-' : '+', std::labs(e));
  return out + buf;
}

std::string Real::to_string(int digits, mpfr_rnd_t rnd) const {
  if (is_zero()) return "0";
  long e10 = static_cast<long>(mpfr_get_exp(v_) * 0.30103);
  if (e10 < -4 || e10 > 12) return to_scientific(digits, rnd);
  // `digits` significant digits in fixed notation.
  int decimals = std::max(0, digits - static_cast<int>(e10) - 1);
  return to_fixed(decimals, rnd);
}

Real Real::operator-() const {
  Real out(precision());
  mpfr_neg(out.v_, v_, MPFR_RNDN);
  return out;
}

Real& Real::operator+=(const Real& rhs) { return *this = *this + rhs; }
Real& Real::operator-=(const Real& rhs) { return *this = *this - rhs; }
Real& Real::operator*=(const Real& rhs) { return *this = *this * rhs; }
Real& Real::operator/=(const Real& rhs) { return *this = *this / rhs; }

Real operator+(const Real& a, const Real& b) {
  Real out(Bits{joint(a, b)});
  mpfr_add(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

Real operator-(const Real& a, const Real& b) {
  Real out(Bits{joint(a, b)});
  mpfr_sub(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

Real operator*(const Real& a, const Real& b) {
  Real out(Bits{joint(a, b)});
  mpfr_mul(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

Real operator/(const Real& a, const Real& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  Real out(Bits{joint(a, b)});
  mpfr_div(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

Real operator+(const Real& a, long b) {
  Real out(a.precision());
  mpfr_add_si(out.v_, a.v_, b, MPFR_RNDN);
  return out;
}

Real operator-(const Real& a, long b) {
  Real out(a.precision());
  mpfr_sub_si(out.v_, a.v_, b, MPFR_RNDN);
  return out;
}

Real operator*(const Real& a, long b) {
  Real out(a.precision());
  mpfr_mul_si(out.v_, a.v_, b, MPFR_RNDN);
  return out;
}

Real operator/(const Real& a, long b) {
  if (b == 0) throw DomainError("division by zero");
  Real out(a.precision());
  mpfr_div_si(out.v_, a.v_, b, MPFR_RNDN);
  return out;
}

Real operator-(long a, const Real& b) {
  Real out(b.precision());
  mpfr_si_sub(out.v_, a, b.v_, MPFR_RNDN);
  return out;
}

Real operator/(long a, const Real& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  Real out(b.precision());
  mpfr_si_div(out.v_, a, b.v_, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const Real& a, long b) {
  if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp_si(a.v_, b);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

Real log(const Real& x) {
  if (x.sign() <= 0) throw DomainError("log of non-positive value");
  Real out(x.precision());
  mpfr_log(out.v_, x.v_, MPFR_RNDN);
  return out;
}

Real log1p(const Real& x) {
  if (x <= -1) throw DomainError("log1p argument <= -1");
  Real out(x.precision());
  mpfr_log1p(out.v_, x.v_, MPFR_RNDN);
  return out;
}

Real exp(const Real& x) {
  Real out(x.precision());
  mpfr_exp(out.v_, x.v_, MPFR_RNDN);
  return out;
}

Real sqrt(const Real& x) {
  if (x.sign() < 0) throw DomainError("sqrt of negative value");
  Real out(x.precision());
  mpfr_sqrt(out.v_, x.v_, MPFR_RNDN);
  return out;
}

Real abs(const Real& x) {
  Real out(x.precision());
  mpfr_abs(out.v_, x.v_, MPFR_RNDN);
  return out;
}

Real pow(const Real& x, long n) {
  Real out(x.precision());
  mpfr_pow_si(out.v_, x.v_, n, MPFR_RNDN);
  return out;
}

Real pow(const Real& x, const Real& y) {
  Real out(Bits{joint(x, y)});
  mpfr_pow(out.v_, x.v_, y.v_, MPFR_RNDN);
  return out;
}

Real log_of(unsigned long q, Bits prec) {
  return log(Real(static_cast<long>(q), prec));
}

}  // namespace codebounds
