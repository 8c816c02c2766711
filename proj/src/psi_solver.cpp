#include "codebounds/psi_solver.hpp"

#include "codebounds/entropy.hpp"
#include "codebounds/errors.hpp"
#include "codebounds/maximizer.hpp"

#include <stdexcept>

namespace codebounds {

std::string to_string(Method m) { return m == Method::closed_form ? "closed-form" : "numerical"; }

std::string to_string(PsiStatus s) {
  switch (s) {
    case PsiStatus::root: return "root";
    case PsiStatus::zero_branch: return "zero_branch";
    case PsiStatus::clamped: return "clamped";
  }
  return "unknown";
}

PsiProblem::PsiProblem(IharaProfile profile_, Real y_, std::vector<Real> xs_, Bits precision_)
    : profile(std::move(profile_)), y(y_.with_precision(precision_)), precision(precision_) {
  if (xs_.empty()) throw InputError("m must be >= 1");
  profile.gamma = profile.gamma.with_precision(precision);
  for (auto& [l, g] : profile.gamma_l) g = g.with_precision(precision);
  Real used(precision);
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (xs_[i] < 0) throw DomainError("x_" + std::to_string(i + 1) + " must be non-negative");
    xs.push_back(xs_[i].with_precision(precision));
    used += 2 * xs.back() * static_cast<long>(i + 2);
  }
  if (y <= 0) throw DomainError("y must be positive");
  if (y + used >= 1) throw DomainError("y + 2 sum (l+1) x_l must be < 1");
}

Real PsiProblem::theta() const {
  Real used(precision);
  for (std::size_t i = 0; i < xs.size(); ++i) used += 2 * xs[i] * static_cast<long>(i + 2);
  return profile.gamma * (1 - y - used);
}

SurfaceParams PsiProblem::surface(const Real& sigma) const { return {profile.q, profile.gamma, y, xs, sigma}; }

Real class_number_target(const IharaProfile& profile) {
  const Bits prec = profile.precision();
  const QaryLog lq(profile.q, prec);
  Real sum(1L, prec);
  int top = 1;
  for (const auto& [l, g] : profile.gamma_l) top = std::max(top, l);
  for (int l = 1; l <= top; ++l) {
    const Real g = profile.gamma_at(l);
    if (g.is_zero()) continue;
    // log_q(q^l/(q^l-1)) = -log1p(-q^-l)/ln q
    const Real ql = pow(Real(static_cast<long>(profile.q), prec), l);
    sum += g * -log1p(-(1 / ql)) / lq.ln_q();
  }
  return sum / profile.gamma;
}

Real numerical_tolerance(Bits prec) { return Real::pow2(-prec.value / 4, prec); }

namespace {

struct CornerEval {
  bool feasible = false;
  Real value;
};

CornerEval corner_value(const SurfaceParams& sp, const CornerData& cd) {
  if (!cd.feasible()) return {false, Real(sp.precision())};
  return {true, s_value(sp, cd.corner_point(sp.precision()))};
}

}  // namespace

IValue i_value(const PsiProblem& problem, const Real& sigma) {
  if (sigma < 0) throw DomainError("sigma must be non-negative");
  const SurfaceParams sp = problem.surface(sigma.with_precision(problem.precision));
  const CornerData cd = corner_data(sp.xs());
  IValue out{Real(problem.precision), Method::closed_form, check_conditions(sp), std::nullopt};
  const CornerEval corner = corner_value(sp, cd);
  if (out.conditions.all()) {
    out.value = corner.value;
    return out;
  }
  out.method = Method::numerical;
  const Real tol = numerical_tolerance(problem.precision);
  if (corner.feasible) {
    const auto upper = concave_upper_bound(sp, cd.corner_point(sp.precision()));
    if (upper && *upper - corner.value <= tol) {
      out.value = corner.value;
      out.upper = *upper;
      return out;
    }
  }
  const MaximizeResult r = maximize_surface(sp, tol);
  out.value = r.value;
  if (r.certified) out.upper = r.value + r.gap_bound;
  if (corner.feasible) out.value = max(out.value, corner.value);
  return out;
}

PsiResult psi_value(const PsiProblem& problem) {
  const Bits prec = problem.precision;
  PsiDiagnostics d;
  d.theta = problem.theta();
  d.target = class_number_target(problem.profile);
  d.sigma_edge = d.theta * (1 - Real::pow2(-prec.value / 2, prec));
  const CornerData cd = corner_data(problem.xs);
  const Real zero(prec);

  // Lower bound shortcut: if the corner already beats T at the edge, so does I.
  const CornerEval edge_corner = corner_value(problem.surface(d.sigma_edge), cd);
  if (edge_corner.feasible && edge_corner.value > d.target) {
    d.limit_proxy = edge_corner.value;
    d.limit_is_lower_bound = true;
  } else {
    const IValue edge = i_value(problem, d.sigma_edge);
    d.limit_proxy = edge.value;
    d.method = edge.method;
    if (edge.method == Method::numerical) ++d.numerical_evaluations;
  }
  if (d.limit_proxy <= d.target) {
    d.status = PsiStatus::zero_branch;
    d.i_zero = i_value(problem, zero).value;
    d.lo = zero;
    d.hi = zero;
    d.width = zero;
    return {zero, d};
  }

  const IValue at_zero = i_value(problem, zero);
  d.i_zero = at_zero.value;
  if (at_zero.value >= d.target) {
    d.status = PsiStatus::clamped;
    d.method = at_zero.method;
    d.lo = zero;
    d.hi = zero;
    d.width = zero;
    return {zero, d};
  }

  // Bracketing root search: Illinois false position on estimates of I - T,
  // with a bisection step whenever the bracket fails to halve. Every bracket
  // update rests on a certified comparison with T; the estimates only choose
  // the next point.
  Real lo = zero;
  Real hi = d.sigma_edge;
  Real f_lo = at_zero.value - d.target;
  Real f_hi = d.limit_proxy - d.target;
  int last_side = 0;
  const Real goal = Real::pow2(16 - prec.value, prec) * d.theta;
  bool numerical_decision = at_zero.method == Method::numerical;
  const int cap = 4 * static_cast<int>(prec.value);
  Real width_before = hi - lo;
  while (hi - lo > goal) {
    if (++d.iterations > cap) throw std::logic_error("root search did not converge");
    Real mid = (lo + hi) / 2;
    if (d.iterations % 3 != 0 || hi - lo < width_before / 2) {
      if (f_lo < 0 && f_hi >= 0) {
        // Keep the trial point at least goal/2 inside the bracket.
        const Real fp = lo - f_lo * (hi - lo) / (f_hi - f_lo);
        mid = min(max(fp, lo + goal / 2), hi - goal / 2);
      }
    }
    if (d.iterations % 3 == 0) width_before = hi - lo;

    const SurfaceParams sp = problem.surface(mid);
    const CornerEval c = corner_value(sp, cd);
    int side = 0;  // +1: I(mid) >= T, -1: I(mid) < T
    Real f_mid(prec);
    if (c.feasible && c.value >= d.target) {
      side = 1;
      f_mid = c.value - d.target;
    } else if (check_conditions(sp).all()) {
      side = -1;
      f_mid = c.value - d.target;
    } else if (c.feasible) {
      // Concavity bound: I(mid) <= upper < T decides without the maximizer.
      const auto upper = concave_upper_bound(sp, cd.corner_point(prec));
      if (upper && *upper < d.target) {
        side = -1;
        f_mid = c.value - d.target;
        numerical_decision = true;
        d.bound_gap = d.bound_gap ? max(*d.bound_gap, *upper - c.value) : *upper - c.value;
      }
    }
    if (side == 0) {
      const IValue iv = i_value(problem, mid);
      ++d.numerical_evaluations;
      f_mid = iv.value - d.target;
      if (iv.value >= d.target) {
        side = 1;
      } else {
        numerical_decision = true;
        if (iv.upper && *iv.upper >= d.target) {
          // T lies inside the certified interval for I(mid): the bracket
          // cannot be narrowed further at this precision.
          d.resolution_limited = true;
          break;
        }
        side = -1;
      }
    }
    if (side > 0) {
      hi = mid;
      f_hi = f_mid;
      if (last_side > 0) f_lo /= 2;
    } else {
      lo = mid;
      f_lo = f_mid;
      if (last_side < 0) f_hi /= 2;
    }
    last_side = side;
  }
  const Real root = (lo + hi) / 2;
  d.lo = lo;
  d.hi = hi;
  d.width = hi - lo;
  d.conditions_lo = check_conditions(problem.surface(lo));
  d.conditions_hi = check_conditions(problem.surface(hi));
  d.conditions_root = check_conditions(problem.surface(root));
  const bool certified = d.conditions_lo->all() && d.conditions_hi->all() && d.conditions_root->all();
  d.method = certified && !numerical_decision ? Method::closed_form : Method::numerical;
  d.status = PsiStatus::root;
  return {root, d};
}

nlohmann::json to_json(const ConditionReport& r, int digits) {
  auto list = [&](const std::vector<bool>& b, const std::vector<Real>& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < b.size(); ++i) {
      arr.push_back({{"pass", static_cast<bool>(b[i])}, {"slack", s[i].to_string(digits, MPFR_RNDN)}});
    }
    return arr;
  };
  return {{"all", r.all()},
          {"corner_feasible", r.corner_feasible},
          {"c1", {{"pass", r.c1}, {"slack", r.c1_slack.to_string(digits, MPFR_RNDN)}}},
          {"c2", list(r.c2, r.c2_slack)},
          {"c3", {{"pass", r.c3}, {"slack", r.c3_slack.to_string(digits, MPFR_RNDN)}}},
          {"c4", list(r.c4, r.c4_slack)}};
}

nlohmann::json PsiDiagnostics::to_json(int digits) const {
  auto s = [&](const Real& v) { return v.to_string(digits, MPFR_RNDN); };
  nlohmann::json j = {{"theta", s(theta)},
                      {"target", s(target)},
                      {"i_zero", s(i_zero)},
                      {"limit_proxy", s(limit_proxy)},
                      {"limit_is_lower_bound", limit_is_lower_bound},
                      {"sigma_edge", s(sigma_edge)},
                      {"bracket_lo", s(lo)},
                      {"bracket_hi", s(hi)},
                      {"bracket_width", s(width)},
                      {"iterations", iterations},
                      {"numerical_evaluations", numerical_evaluations},
                      {"method", codebounds::to_string(method)},
                      {"status", codebounds::to_string(status)}};
  if (bound_gap) j["bound_gap"] = s(*bound_gap);
  if (resolution_limited) j["resolution_limited"] = true;
  if (conditions_root) j["conditions_root"] = codebounds::to_json(*conditions_root, digits);
  return j;
}

}  // namespace codebounds
