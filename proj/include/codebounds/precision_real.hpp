#pragma once

#include <compare>
#include <gmpxx.h>
#include <mpfr.h>
#include <string>
#include <string_view>

namespace codebounds {

/// Working precision in bits.
struct Bits {
  mpfr_prec_t value;
  constexpr explicit Bits(mpfr_prec_t v) : value(v) {}
  friend constexpr auto operator<=>(Bits, Bits) = default;
};

inline constexpr Bits kDefaultPrecision{768};
inline constexpr Bits kMinPrecision{64};

/// Arbitrary-precision real with an explicit bit precision.
///
/// Values are immutable from the caller's point of view: every operation
/// returns a fresh value. A binary operation carries the smaller precision of
/// its operands; an operation with an integer carries the precision of the
/// real operand. All rounding is to nearest unless stated.
class Real {
 public:
  explicit Real(Bits prec = kDefaultPrecision);
  Real(long value, Bits prec);
  Real(int value, Bits prec) : Real(static_cast<long>(value), prec) {}
  Real(double value, Bits prec);
  Real(const mpz_class& value, Bits prec);
  Real(const mpq_class& value, Bits prec, mpfr_rnd_t rnd = MPFR_RNDN);

  /// Parses a plain decimal literal ("0.298", "-3.41e-16"), correctly rounded.
  static Real parse_decimal(std::string_view text, Bits prec);
  /// 2^exponent exactly.
  static Real pow2(long exponent, Bits prec);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  [[nodiscard]] Bits precision() const { return Bits{mpfr_get_prec(v_)}; }
  /// Same value rounded to a different precision.
  [[nodiscard]] Real with_precision(Bits prec) const;

  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  [[nodiscard]] bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  [[nodiscard]] int sign() const { return mpfr_sgn(v_); }
  /// Exponent e with 0.5 <= |x|/2^e < 1; undefined for zero.
  [[nodiscard]] long exponent() const { return mpfr_get_exp(v_); }
  /// Unit in the last place of this value (2^-prec for zero).
  [[nodiscard]] Real ulp() const;

  [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Exact conversion; every finite binary float is a dyadic rational.
  [[nodiscard]] mpq_class to_rational() const;

  /// Decimal with `decimals` digits after the point, truncated toward zero
  /// by default.
  [[nodiscard]] std::string to_fixed(int decimals, mpfr_rnd_t rnd = MPFR_RNDZ) const;
  /// Scientific notation with `digits` significant digits ("d.ddde-17").
  [[nodiscard]] std::string to_scientific(int digits, mpfr_rnd_t rnd = MPFR_RNDZ) const;
  /// Fixed notation for moderate magnitudes, scientific otherwise.
  [[nodiscard]] std::string to_string(int digits, mpfr_rnd_t rnd = MPFR_RNDZ) const;

  Real operator-() const;
  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator+=(long rhs) { return *this = *this + rhs; }
  Real& operator-=(long rhs) { return *this = *this - rhs; }
  Real& operator*=(long rhs) { return *this = *this * rhs; }
  Real& operator/=(long rhs) { return *this = *this / rhs; }

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator+(const Real& a, long b);
  friend Real operator-(const Real& a, long b);
  friend Real operator*(const Real& a, long b);
  friend Real operator/(const Real& a, long b);
  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator-(long a, const Real& b);
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator/(long a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b);

  friend Real log(const Real& x);
  friend Real log1p(const Real& x);
  friend Real exp(const Real& x);
  friend Real sqrt(const Real& x);
  friend Real abs(const Real& x);
  friend Real pow(const Real& x, long n);
  friend Real pow(const Real& x, const Real& y);
  friend Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
  friend Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

  [[nodiscard]] mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

Real log(const Real& x);
Real log1p(const Real& x);
Real exp(const Real& x);
Real sqrt(const Real& x);
Real abs(const Real& x);
Real pow(const Real& x, long n);
Real pow(const Real& x, const Real& y);

/// ln(q) at the requested precision.
Real log_of(unsigned long q, Bits prec);

}  // namespace codebounds
