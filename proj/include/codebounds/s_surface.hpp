#pragma once

#include "codebounds/precision_real.hpp"

#include <gmpxx.h>
#include <vector>

namespace codebounds {

/// Parameters of the surface S(sigma, y, x, t_1..t_m).
///
/// m is xs.size(). The constructor checks y > 0, xs >= 0, sigma >= 0,
/// gamma > 0 and y + 2 sum (l+1) x_l + sigma/gamma < 1.
class SurfaceParams {
 public:
  SurfaceParams(unsigned long q, Real gamma, Real y, std::vector<Real> xs, Real sigma);

  [[nodiscard]] unsigned long q() const { return q_; }
  [[nodiscard]] const Real& gamma() const { return gamma_; }
  [[nodiscard]] const Real& y() const { return y_; }
  [[nodiscard]] const std::vector<Real>& xs() const { return xs_; }
  [[nodiscard]] const Real& sigma() const { return sigma_; }
  [[nodiscard]] std::size_t m() const { return xs_.size(); }
  [[nodiscard]] Bits precision() const { return y_.precision(); }
  /// sigma / gamma, the upper end of the x range.
  [[nodiscard]] const Real& budget() const { return budget_; }
  /// 2 sum (l+1) x_l, the right side of the weighted t constraint.
  [[nodiscard]] const Real& weight_cap() const { return weight_cap_; }

  /// Same parameters at a different sigma.
  [[nodiscard]] SurfaceParams with_sigma(const Real& sigma) const;

 private:
  unsigned long q_;
  Real gamma_, y_;
  std::vector<Real> xs_;
  Real sigma_, budget_, weight_cap_;
};

/// A point (x, t_1..t_m) of the maximization domain.
struct SPoint {
  Real x;
  std::vector<Real> ts;
};

/// Corner data of the t region, computed exactly from the x_l.
struct CornerData {
  std::vector<mpq_class> t_bar;
  std::vector<mpq_class> t_star;
  mpq_class u;

  /// t*_1 >= 0, which puts A_1 = (t*_1, t̄_2, .., t̄_m) in the region
  /// (t*_1 <= 2 x_1 <= t̄_1 always). Later t*_l only enter C4 and may be
  /// negative.
  [[nodiscard]] bool feasible() const;
  /// A_1 at precision prec with x = 0. Rounded toward zero so the point
  /// stays inside the region.
  [[nodiscard]] SPoint corner_point(Bits prec) const;
};

/// Exact corner data: the x_l are binary floats, hence exact rationals.
CornerData corner_data(const std::vector<Real>& xs);
CornerData corner_data(const std::vector<mpq_class>& xs);

/// Outcome of the closed-form conditions with signed slacks
/// (right side minus left side; non-negative, or positive for strict
/// inequalities, means the condition holds).
struct ConditionReport {
  bool c1 = false;
  std::vector<bool> c2;
  bool c3 = false;
  std::vector<bool> c4;
  bool corner_feasible = false;
  Real c1_slack;
  std::vector<Real> c2_slack;
  Real c3_slack;
  std::vector<Real> c4_slack;

  [[nodiscard]] bool all() const;
};

ConditionReport check_conditions(const SurfaceParams& params);

/// Whether ts lies in the t region of xs, decided in exact rational
/// arithmetic. Throws InputError on a length mismatch.
bool region_contains(const std::vector<Real>& xs, const std::vector<Real>& ts);

/// S at a point of the domain. Throws DomainError naming the violated
/// constraint when the point is outside.
Real s_value(const SurfaceParams& params, const SPoint& point);

/// Same function with the entropy chain collapsed:
/// -sum t_l log t_l - P log P - Z log Z + tail, Z = 1 - y - x - sum (l+1) t_l.
Real s_value_simplified(const SurfaceParams& params, const SPoint& point);

/// (dS/dx, dS/dt_1, .., dS/dt_m) at a strictly interior point that is not on
/// the branch seam. Throws NondifferentiableError otherwise.
std::vector<Real> s_gradient(const SurfaceParams& params, const SPoint& point);

/// dS/dsigma under the same restrictions as s_gradient, except that x may be 0
/// and t_l may sit on the region boundary.
Real s_sigma_derivative(const SurfaceParams& params, const SPoint& point);

/// Which closed form the tail of S uses at a point.
enum class TailBranch { entropy, linear };
TailBranch tail_branch(const SurfaceParams& params, const SPoint& point);

/// Summary of a random-point sweep: the largest S seen and the count of
/// points whose value exceeded a reference by more than tol.
struct SweepResult {
  Real max_value;
  std::size_t exceed = 0;
  std::size_t points = 0;
};

/// Deterministic feasible sample number `index` of a stream seeded with
/// `seed` (x in [0, sigma/gamma], ts in the region).
SPoint sample_point(const SurfaceParams& params, unsigned long seed, std::size_t index);

/// Evaluates S at `count` samples and compares with `reference` + tol.
SweepResult sweep_serial(const SurfaceParams& params, unsigned long seed, std::size_t count,
                         const Real& reference, const Real& tol);
/// OpenMP version of sweep_serial; identical results.
SweepResult sweep_parallel(const SurfaceParams& params, unsigned long seed, std::size_t count,
                           const Real& reference, const Real& tol);

}  // namespace codebounds
