#pragma once

#include "codebounds/classic_bounds.hpp"
#include "codebounds/s_surface.hpp"

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace codebounds {

enum class Method { closed_form, numerical };
enum class PsiStatus { root, zero_branch, clamped };

std::string to_string(Method m);
std::string to_string(PsiStatus s);

/// Inputs of Psi(y, x_1..x_m). Values are rounded to `precision` on entry.
struct PsiProblem {
  PsiProblem(IharaProfile profile, Real y, std::vector<Real> xs, Bits precision = kDefaultPrecision);

  IharaProfile profile;
  Real y;
  std::vector<Real> xs;
  Bits precision;

  /// theta = gamma (1 - y - 2 sum (l+1) x_l), the right end of the sigma domain.
  [[nodiscard]] Real theta() const;
  [[nodiscard]] SurfaceParams surface(const Real& sigma) const;
};

/// T = (1/gamma) [1 + sum_l gamma_l log_q(q^l / (q^l - 1))].
Real class_number_target(const IharaProfile& profile);

struct IValue {
  Real value;
  Method method = Method::closed_form;
  ConditionReport conditions;
  std::optional<Real> upper;  // certified upper bound on I, when known
};

/// max S over the (x, t) domain at this sigma. Closed form at the corner when
/// the conditions hold; otherwise numerical, never below the corner value.
IValue i_value(const PsiProblem& problem, const Real& sigma);

/// Tolerance of the numerical maximization: 2^(-precision/4).
Real numerical_tolerance(Bits prec);

struct PsiDiagnostics {
  Real theta, target, i_zero, limit_proxy, sigma_edge;
  /// True when limit_proxy is the corner value at sigma_edge, a lower bound
  /// on I there that already exceeds the target.
  bool limit_is_lower_bound = false;
  Real lo, hi, width;
  int iterations = 0;
  int numerical_evaluations = 0;
  /// Largest gap between the concavity upper bound and the corner value over
  /// the bisection steps it decided; absent when none were.
  std::optional<Real> bound_gap;
  bool resolution_limited = false;  // stopped where T is within the certified I interval
  Method method = Method::closed_form;
  PsiStatus status = PsiStatus::root;
  std::optional<ConditionReport> conditions_lo, conditions_hi, conditions_root;

  [[nodiscard]] nlohmann::json to_json(int digits) const;
};

struct PsiResult {
  Real psi;
  PsiDiagnostics diagnostics;
};

PsiResult psi_value(const PsiProblem& problem);

nlohmann::json to_json(const ConditionReport& report, int digits);

}  // namespace codebounds
