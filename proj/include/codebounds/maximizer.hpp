#pragma once

#include "codebounds/s_surface.hpp"

#include <optional>

namespace codebounds {

/// Result of maximizing S over the (x, t) domain at fixed sigma.
struct MaximizeResult {
  Real value;          // S at `point`, evaluated by s_value
  SPoint point;        // strictly feasible
  Real gap_bound;      // barrier duality-gap estimate, or the certified gap
  int newton_steps = 0;
  bool certified = false;  // value <= max S <= value + gap_bound
};

/// Maximizes the concave function S(sigma, y, ., .) over its compact domain
/// with a log-barrier Newton method. The returned value is S at a feasible
/// point, so it never exceeds the true maximum; it is within `tol` of it up to
/// the inner Newton tolerance. Above 256 bits a coarse solve is polished by
/// Newton on the active constraints and certified with the concavity bound.
MaximizeResult maximize_surface(const SurfaceParams& params, const Real& tol);

/// Upper bound on max S from concavity: S(p) + max over the domain of
/// grad S(p) . (z - p), the inner maximum being a fractional knapsack.
/// Empty when the gradient at p is unbounded (some active t_l = 0, or
/// x = sigma/gamma on the entropy branch).
std::optional<Real> concave_upper_bound(const SurfaceParams& params, const SPoint& point);

}  // namespace codebounds
