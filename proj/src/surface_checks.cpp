#include "codebounds/surface_checks.hpp"

#include "codebounds/errors.hpp"
#include "codebounds/psi_solver.hpp"
#include "codebounds/rational.hpp"
#include "codebounds/reference_examples.hpp"
#include "codebounds/s_surface.hpp"

#include <random>

namespace codebounds {

namespace {

struct Fixture {
  SurfaceParams params;
  const char* label;
};

std::vector<Real> reals(std::initializer_list<const char*> lits, Bits prec) {
  std::vector<Real> out;
  for (const char* l : lits) out.push_back(parse_real(l, prec));
  return out;
}

// One fixture per tail branch, with x-values large enough for the
// difference quotients to be well conditioned.
std::vector<Fixture> gradient_fixtures(Bits prec) {
  const std::vector<Real> xs = reals({"0.01", "0.005", "0.002"}, prec);
  return {{SurfaceParams(64, Real(7L, prec), parse_real("0.5", prec), xs, parse_real("0.7", prec)), "linear"},
          {SurfaceParams(64, Real(7L, prec), parse_real("0.5", prec), xs, parse_real("0.021", prec)), "entropy"}};
}

Real y_of(const Real& delta, const std::vector<Real>& xs) {
  Real y = 1 - delta;
  for (std::size_t i = 0; i < xs.size(); ++i) y -= 2 * static_cast<long>(i + 2) * xs[i];
  return y;
}

}  // namespace

nlohmann::json verify_surface(std::uint64_t seed, Bits prec) {
  nlohmann::json report;
  bool ok = true;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Real one(1L, prec);

  // Gradient against central differences.
  {
    const Real h = Real::pow2(-prec.value / 3, prec);
    const Real tol = Real::pow2(-prec.value / 4, prec);
    long checked = 0;
    long skipped = 0;
    nlohmann::json fail;
    Real worst(prec);
    const auto fixtures = gradient_fixtures(prec);
    for (std::size_t index = 0; checked < 200; ++index) {
      const Fixture& fx = fixtures[index % fixtures.size()];
      const SPoint pt = sample_point(fx.params, seed, index);
      std::vector<Real> g;
      try {
        g = s_gradient(fx.params, pt);
      } catch (const NondifferentiableError&) {
        ++skipped;
        continue;
      }
      bool usable = true;
      for (std::size_t c = 0; c < g.size() && usable; ++c) {
        SPoint lo = pt;
        SPoint hi = pt;
        Real& lo_c = c == 0 ? lo.x : lo.ts[c - 1];
        Real& hi_c = c == 0 ? hi.x : hi.ts[c - 1];
        lo_c -= h;
        hi_c += h;
        Real fd(prec);
        try {
          if (tail_branch(fx.params, lo) != tail_branch(fx.params, hi)) {
            usable = false;
            break;
          }
          fd = (s_value(fx.params, hi) - s_value(fx.params, lo)) / (2 * h);
        } catch (const DomainError&) {
          usable = false;
          break;
        }
        const Real err = abs(fd - g[c]) / max(abs(g[c]), one);
        worst = max(worst, err);
        if (err >= tol && fail.is_null()) {
          fail = {{"fixture", fx.label}, {"index", index}, {"component", c}, {"relative_error", err.to_scientific(6)}};
        }
      }
      if (usable) {
        ++checked;
      } else {
        ++skipped;
      }
    }
    report["gradient"] = {{"points", checked},
                          {"skipped", skipped},
                          {"max_relative_error", worst.to_scientific(6)},
                          {"tolerance", tol.to_scientific(6)},
                          {"first_counterexample", fail}};
    ok = ok && fail.is_null();
  }

  const ReferenceExample ex = *find_reference_example("q64");
  const ReferenceCase& rc = ex.cases.front();
  const Real delta = parse_real(rc.delta, prec);
  std::vector<Real> xs;
  for (const auto& x : rc.xs) xs.push_back(parse_real(x, prec));
  const Real y = y_of(delta, xs);
  const IharaProfile profile(ex.q, Real(7L, prec));
  const Real sigma_max = parse_real("1e-4", prec);

  // Strict monotonicity of I.
  {
    const PsiProblem problem(profile, y, xs, prec);
    nlohmann::json fail;
    for (int i = 0; i < 200 && fail.is_null(); ++i) {
      Real a = sigma_max * Real(unit(rng), prec);
      Real b = sigma_max * Real(unit(rng), prec);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      const Real ia = i_value(problem, a).value;
      const Real ib = i_value(problem, b).value;
      if (!(ia < ib)) fail = {{"sigma_lo", a.to_scientific(20)}, {"sigma_hi", b.to_scientific(20)}};
    }
    report["i_monotone"] = {{"pairs", 200}, {"first_counterexample", fail}};
    ok = ok && fail.is_null();
  }

  // Corner dominance under the closed-form conditions.
  {
    nlohmann::json fail;
    std::size_t points = 0;
    for (int s = 0; s < 5 && fail.is_null(); ++s) {
      const SurfaceParams sp(ex.q, Real(7L, prec), y, xs, sigma_max * Real(unit(rng), prec));
      const CornerData cd = corner_data(xs);
      const Real corner = s_value(sp, cd.corner_point(prec));
      const SweepResult sw = sweep_parallel(sp, seed + static_cast<std::uint64_t>(s), 100, corner, 4 * corner.ulp());
      points += sw.points;
      if (!check_conditions(sp).all()) fail = {{"sigma", sp.sigma().to_scientific(10)}, {"reason", "conditions fail"}};
      if (sw.exceed > 0) fail = {{"sigma", sp.sigma().to_scientific(10)}, {"exceed", sw.exceed}};
    }
    report["corner_dominance"] = {{"points", points}, {"first_counterexample", fail}};
    ok = ok && fail.is_null();
  }

  // Telescoped vs simplified S.
  {
    nlohmann::json fail;
    long points = 0;
    auto fixtures = gradient_fixtures(prec);
    fixtures.push_back({SurfaceParams(ex.q, Real(7L, prec), y, xs, sigma_max), "reference"});
    fixtures.push_back({SurfaceParams(2, Real(1L, prec), parse_real("0.3", prec), {parse_real("0.05", prec)},
                                      parse_real("0.2", prec)),
                        "m1"});
    for (std::size_t index = 0; index < 1000; ++index) {
      const Fixture& fx = fixtures[index % fixtures.size()];
      const SPoint pt = sample_point(fx.params, seed + 1, index);
      const Real a = s_value(fx.params, pt);
      const Real b = s_value_simplified(fx.params, pt);
      ++points;
      const Real scale = max(max(abs(a), abs(b)), one);
      if (abs(a - b) > 4 * scale.ulp() && fail.is_null()) {
        fail = {{"fixture", fx.label}, {"index", index}, {"difference", (a - b).to_scientific(6)}};
      }
    }
    report["simplified_form"] = {{"points", points}, {"first_counterexample", fail}};
    ok = ok && fail.is_null();
  }

  report["precision_bits"] = prec.value;
  report["ok"] = ok;
  return report;
}

}  // namespace codebounds
