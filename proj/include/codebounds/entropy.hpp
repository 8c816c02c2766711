#pragma once

#include "codebounds/precision_real.hpp"

namespace codebounds {

/// Base-q logarithm and the q-ary entropy primitives at a fixed precision.
///
/// ln q is computed once per instance; instances are immutable and can be
/// shared across threads.
class QaryLog {
 public:
  QaryLog(unsigned long q, Bits prec);

  [[nodiscard]] unsigned long q() const { return q_; }
  [[nodiscard]] Bits precision() const { return ln_q_.precision(); }
  [[nodiscard]] const Real& ln_q() const { return ln_q_; }

  /// ln(x)/ln(q); exact when x is an integer power of q. Throws DomainError
  /// for x <= 0.
  [[nodiscard]] Real log(const Real& x) const;
  /// x log_q x on [0,1], with 0 log 0 = 0.
  [[nodiscard]] Real xlog(const Real& x) const;
  /// E(x) = -x log_q x - (1-x) log_q (1-x) on [0,1]; E(0) = E(1) = 0.
  [[nodiscard]] Real entropy(const Real& x) const;

 private:
  unsigned long q_;
  Real ln_q_;
};

Real logq(const Real& x, unsigned long q);
Real xlogq(const Real& x, unsigned long q);
Real entropy_q(const Real& x, unsigned long q);

}  // namespace codebounds
