#pragma once

#include "codebounds/precision_real.hpp"

#include <gmpxx.h>
#include <string>
#include <string_view>

namespace codebounds {

/// Exact rational input, stored in lowest terms with a positive denominator.
///
/// Accepted literal forms: integers ("64"), fractions ("32766/130"),
/// integer powers ("2^21", "10^-3"), and decimals ("0.2987", "3.41e-16").
/// Decimals are converted exactly, so "0.1" is 1/10. A trailing "..." or "…"
/// on a decimal is ignored.
class RationalInput {
 public:
  RationalInput() = default;
  RationalInput(mpz_class numerator, mpz_class denominator);
  explicit RationalInput(const mpq_class& value);
  RationalInput(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  static RationalInput parse(std::string_view text);

  [[nodiscard]] const mpq_class& value() const { return value_; }
  [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }
  [[nodiscard]] int sign() const { return sgn(value_); }

  /// Single rounding to the working precision.
  [[nodiscard]] Real to_real(Bits prec) const { return Real(value_, prec); }
  /// "p/q", or "p" when the denominator is one.
  [[nodiscard]] std::string to_string() const { return value_.get_str(); }

  friend bool operator==(const RationalInput& a, const RationalInput& b) { return a.value_ == b.value_; }

 private:
  mpq_class value_{0};
};

/// Parses any RationalInput literal straight to a Real.
inline Real parse_real(std::string_view text, Bits prec) { return RationalInput::parse(text).to_real(prec); }

/// Returns k when x = base^k for an integer k, by exact integer arithmetic.
bool exact_integer_power(const mpq_class& x, unsigned long base, long& k);

}  // namespace codebounds
