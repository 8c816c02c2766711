#include "codebounds/entropy.hpp"

#include "codebounds/errors.hpp"
#include "codebounds/rational.hpp"

#include <string>

namespace codebounds {

namespace {

bool is_power_of_two(unsigned long v) { return v != 0 && (v & (v - 1)) == 0; }

void check_unit_interval(const Real& x, const char* what) {
  if (x < 0 || x > 1) {
    throw DomainError(std::string(what) + ": argument " + x.to_scientific(12, MPFR_RNDN) + " outside [0,1]");
  }
}

}  // namespace

QaryLog::QaryLog(unsigned long q, Bits prec) : q_(q), ln_q_(prec) {
  if (q < 2) throw InputError("logarithm base must be >= 2, got " + std::to_string(q));
  ln_q_ = log_of(q, prec);
}

Real QaryLog::log(const Real& x) const {
  if (x.sign() <= 0) throw DomainError("logq: argument must be positive");
  // Integer powers of q come out exact; a binary float can only hold q^-k
  // exactly when q is a power of two.
  if (x.is_integer() || (is_power_of_two(q_) && x.to_rational().get_num() == 1)) {
    long k = 0;
    if (exact_integer_power(x.to_rational(), q_, k)) return Real(k, x.precision());
  }
  return codebounds::log(x) / ln_q_.with_precision(x.precision());
}

Real QaryLog::xlog(const Real& x) const {
  check_unit_interval(x, "xlogq");
  if (x.is_zero()) return Real(x.precision());
  return x * log(x);
}

Real QaryLog::entropy(const Real& x) const {
  check_unit_interval(x, "entropy_q");
  if (x.is_zero() || x == 1) return Real(x.precision());
  return -(xlog(x) + xlog(1 - x));
}

Real logq(const Real& x, unsigned long q) { return QaryLog(q, x.precision()).log(x); }
Real xlogq(const Real& x, unsigned long q) { return QaryLog(q, x.precision()).xlog(x); }
Real entropy_q(const Real& x, unsigned long q) { return QaryLog(q, x.precision()).entropy(x); }

}  // namespace codebounds
