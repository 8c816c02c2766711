#pragma once

#include "codebounds/precision_real.hpp"

#include <gmpxx.h>
#include <map>
#include <optional>

namespace codebounds {

/// True when q = p^k for a prime p and k >= 1.
bool is_prime_power(unsigned long q);
bool is_prime(unsigned long p);

/// Limit profile of a tower of function fields: gamma is the ratio of
/// rational places to genus, gamma_l the ratio for degree-l places.
///
/// gamma_l may carry l = 1 to override the default gamma_1 = gamma.
struct IharaProfile {
  unsigned long q = 0;
  Real gamma;
  std::map<int, Real> gamma_l;

  /// Validates q, gamma > 0 and every gamma_l >= 0.
  IharaProfile(unsigned long q_, Real gamma_, std::map<int, Real> gamma_l_ = {});

  /// gamma_l at degree l, with gamma_1 defaulting to gamma.
  [[nodiscard]] Real gamma_at(int l) const;
  [[nodiscard]] Bits precision() const { return gamma.precision(); }
};

enum class IharaKind { square, cube, unknown };

/// Built-in lower bound on A(q). Exact, since both closed forms are rational
/// whenever q is a perfect square or cube.
struct IharaLower {
  IharaKind kind = IharaKind::unknown;
  std::optional<mpq_class> exact;

  [[nodiscard]] bool known() const { return exact.has_value(); }
  /// Throws InputError when kind is unknown.
  [[nodiscard]] Real value(Bits prec) const;
};

/// sqrt(q) - 1 for squares, 2(q^{2/3} - 1)/(q^{1/3} + 2) for cubes. The
/// square formula wins when q is both.
IharaLower ihara_lower(unsigned long q);

/// Profile with gamma = gamma_1 from ihara_lower; throws InputError when q
/// has no built-in value.
IharaProfile default_profile(unsigned long q, Bits prec);

/// Asymptotic Gilbert-Varshamov bound. Defined on the closed interval
/// [0, (q-1)/q] with the endpoint limits 1 and 0.
Real gv_bound(unsigned long q, const Real& delta);
/// 1 - delta - 1/gamma.
Real tvz_bound(const Real& delta, const Real& gamma);
/// tvz_bound + log_q(1 + q^-3).
Real no1_bound(unsigned long q, const Real& delta, const Real& gamma);

}  // namespace codebounds
