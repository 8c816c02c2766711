#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "codebounds/entropy.hpp"
#include "codebounds/errors.hpp"
#include "codebounds/rational.hpp"
#include "codebounds/s_surface.hpp"
#include "oracles.hpp"

#include <random>

using namespace codebounds;

namespace {
const Bits P{512};
Real R(const char* s) { return parse_real(s, P); }
const char* kDelta71 =
    "13763868443250238929521503984833381597731412559044/46065097831342932365531985486767649347321318605709";

std::vector<Real> xs71() { return {R("3.41e-16"), R("1.0634e-23"), R("1.93e-31")}; }

Real y71() {
  Real y = 1 - R(kDelta71);
  const auto xs = xs71();
  for (std::size_t i = 0; i < xs.size(); ++i) y -= 2 * static_cast<long>(i + 2) * xs[i];
  return y;
}

SurfaceParams params71(const Real& sigma) { return SurfaceParams(64, Real(7L, P), y71(), xs71(), sigma); }

Real oracle_s(const SurfaceParams& sp, const SPoint& pt) {
  return oracle::surface(sp.q(), sp.gamma(), sp.y(), sp.sigma(), pt.x, pt.ts);
}

SurfaceParams generic(unsigned long q, const char* sigma) {
  return SurfaceParams(q, Real(7L, P), R("0.5"), {R("0.01"), R("0.005"), R("0.002")}, R(sigma));
}
}  // namespace

TEST_CASE("SurfaceParams validation") {
  CHECK_THROWS_AS(SurfaceParams(64, Real(7L, P), R("0"), {R("0.1")}, R("0")), DomainError);
  CHECK_THROWS_AS(SurfaceParams(64, Real(7L, P), R("0.5"), {R("-0.1")}, R("0")), DomainError);
  CHECK_THROWS_AS(SurfaceParams(64, Real(7L, P), R("0.5"), {R("0.1")}, R("-1e-9")), DomainError);
  CHECK_THROWS_AS(SurfaceParams(64, Real(P), R("0.5"), {R("0.1")}, R("0")), DomainError);
  // 0.5 + 2*2*0.125 = 1
  CHECK_THROWS_AS(SurfaceParams(64, Real(7L, P), R("0.5"), {R("0.125")}, R("0")), DomainError);
  CHECK_NOTHROW(SurfaceParams(64, Real(7L, P), R("0.5"), {R("0.1")}, R("0")));
}

TEST_CASE("corner data") {
  const CornerData m1 = corner_data(std::vector<mpq_class>{mpq_class(3, 10)});
  CHECK(m1.t_star[0] == mpq_class(3, 5));
  CHECK(m1.u == mpq_class(3, 5));

  const mpq_class x1(1, 7);
  const mpq_class x2(2, 11);
  const CornerData m2 = corner_data(std::vector<mpq_class>{x1, x2});
  CHECK(m2.t_star[0] == 2 * x1);
  CHECK(m2.t_star[1] == mpq_class(4, 3) * x2);
  CHECK(m2.t_bar[0] == 2 * x1 + x2);
  CHECK(m2.t_bar[1] == 2 * x2);
  CHECK(m2.u == 2 * x1 + 4 * x2);

  const CornerData m3 = corner_data(std::vector<mpq_class>{1, 1, 1});
  CHECK(m3.t_bar == std::vector<mpq_class>{4, 3, 2});
  CHECK(m3.t_star[0] == mpq_class(1, 2));
  CHECK(m3.u == mpq_class(25, 2));
  CHECK(m3.feasible());

  // Defining identities on a random rational vector.
  const std::vector<mpq_class> xs{mpq_class(3, 17), mpq_class(1, 9), mpq_class(5, 23), mpq_class(2, 31)};
  const CornerData cd = corner_data(xs);
  mpq_class lhs = 2 * cd.t_star[0];
  mpq_class rhs = 0;
  mpq_class u = cd.t_star[0];
  for (std::size_t l = 0; l < xs.size(); ++l) {
    rhs += 2 * static_cast<long>(l + 2) * xs[l];
    if (l > 0) {
      lhs += static_cast<long>(l + 2) * cd.t_bar[l];
      u += static_cast<long>(l + 1) * cd.t_bar[l];
      const long ll = static_cast<long>(l + 1);
      CHECK((ll + 1) * cd.t_star[l] - (ll + 1) * cd.t_bar[l] == ll * cd.t_star[l - 1] - ll * cd.t_bar[l - 1]);
    }
  }
  CHECK(lhs == rhs);
  CHECK(u == cd.u);
  CHECK(cd.t_bar.back() == 2 * xs.back());

  // Real inputs are exact binary rationals.
  const CornerData from_real = corner_data(std::vector<Real>{R("0.25"), R("0.5")});
  CHECK(from_real.t_star[1] == mpq_class(2, 3));
}

TEST_CASE("region_contains") {
  CHECK(region_contains({R("0.1"), R("0.2")}, {Real(P), Real(P)}));
  CHECK_FALSE(region_contains({Real(P), Real(1L, P)}, {Real(1L, P), Real(2L, P)}));
  CHECK_THROWS_AS(region_contains({R("0.1")}, {Real(P), Real(P)}), InputError);
  CHECK_FALSE(region_contains({R("0.1")}, {R("-1e-30")}));
  CHECK_FALSE(region_contains({R("0.1")}, {R("0.2") + R("1e-100")}));

  // A_1 is in the region with the weighted constraint tight.
  const std::vector<Real> xs{R("0.0625"), R("0.03125"), R("0.015625")};
  const CornerData cd = corner_data(xs);
  const SPoint a1 = cd.corner_point(P);
  CHECK(region_contains(xs, a1.ts));
  mpq_class weighted = 0;
  mpq_class cap = 0;
  for (std::size_t l = 0; l < xs.size(); ++l) {
    weighted += static_cast<long>(l + 2) * (l == 0 ? cd.t_star[0] : cd.t_bar[l]);
    cap += 2 * static_cast<long>(l + 2) * xs[l].to_rational();
  }
  CHECK(weighted == cap);
  // Nudging t_1 past t*_1 leaves the region.
  std::vector<Real> over = a1.ts;
  over[0] += Real::pow2(-200, P);
  CHECK_FALSE(region_contains(xs, over));
}

TEST_CASE("s_value examples") {
  // m=1 at the origin: E(y) + D E(y/D).
  const SurfaceParams sp(2, Real(1L, P), R("0.4"), {R("0.05")}, R("0.1"));
  const SPoint origin{Real(P), {Real(P)}};
  const Real d = R("0.5");
  CHECK(oracle::within_ulps(s_value(sp, origin), oracle::entropy(R("0.4"), 2) + d * oracle::entropy(R("0.4") / d, 2), 8));

  const Real y = 1 - R(kDelta71);
  const SurfaceParams zero(64, Real(7L, P), y, {Real(P)}, Real(P));
  const Real e = s_value(zero, origin);
  CHECK(oracle::within_ulps(e, oracle::entropy(y, 64), 8));
  CHECK(e.to_fixed(30) == oracle::entropy(y, 64).to_fixed(30));
  CHECK(e.to_fixed(30) == "0.146634808597473728371528784476");

  CHECK_THROWS_AS(s_value(sp, SPoint{R("0.2"), {Real(P)}}), DomainError);
  CHECK_THROWS_AS(s_value(sp, SPoint{Real(P), {R("0.2")}}), DomainError);
  CHECK_THROWS_AS(s_value(sp, SPoint{Real(P), {Real(P), Real(P)}}), InputError);
}

TEST_CASE("s_value against the telescoped oracle and the simplified form") {
  const std::vector<SurfaceParams> fixtures{
      SurfaceParams(2, Real(1L, P), R("0.3"), {R("0.05")}, R("0.2")), generic(64, "0.7"), generic(64, "0.021"),
      generic(3, "0.3"), params71(R("1e-4"))};
  for (std::size_t i = 0; i < 1000; ++i) {
    const SurfaceParams& sp = fixtures[i % fixtures.size()];
    const SPoint pt = sample_point(sp, 11, i);
    const Real v = s_value(sp, pt);
    CHECK(oracle::within_ulps(v, oracle_s(sp, pt), 16));
    CHECK(oracle::within_ulps(v, s_value_simplified(sp, pt), 4));
  }
}

TEST_CASE("gradient against central differences") {
  const Real h = Real::pow2(-P.value / 3, P);
  const Real tol = Real::pow2(-P.value / 4, P);
  const std::vector<SurfaceParams> fixtures{generic(64, "0.7"), generic(64, "0.021"),
                                            SurfaceParams(2, Real(1L, P), R("0.3"), {R("0.05")}, R("0.2"))};
  int checked = 0;
  for (std::size_t i = 0; checked < 200 && i < 2000; ++i) {
    const SurfaceParams& sp = fixtures[i % fixtures.size()];
    const SPoint pt = sample_point(sp, 5, i);
    std::vector<Real> g;
    try {
      g = s_gradient(sp, pt);
    } catch (const NondifferentiableError&) {
      continue;
    }
    bool usable = true;
    std::vector<Real> fd;
    for (std::size_t c = 0; c < g.size() && usable; ++c) {
      SPoint lo = pt;
      SPoint hi = pt;
      (c == 0 ? lo.x : lo.ts[c - 1]) -= h;
      (c == 0 ? hi.x : hi.ts[c - 1]) += h;
      try {
        if (tail_branch(sp, lo) != tail_branch(sp, hi)) usable = false;
        else fd.push_back((s_value(sp, hi) - s_value(sp, lo)) / (2 * h));
      } catch (const DomainError&) {
        usable = false;
      }
    }
    if (!usable) continue;
    ++checked;
    for (std::size_t c = 0; c < g.size(); ++c) CHECK(abs(fd[c] - g[c]) / max(abs(g[c]), Real(1L, P)) < tol);
  }
  CHECK(checked == 200);
}

TEST_CASE("gradient refuses boundary points") {
  const SurfaceParams sp = generic(64, "0.7");
  const SPoint good = sample_point(sp, 1, 0);
  SPoint edge = good;
  edge.ts[1] = Real(P);
  CHECK_THROWS_AS(s_gradient(sp, edge), NondifferentiableError);
  SPoint x0 = good;
  x0.x = Real(P);
  CHECK_THROWS_AS(s_gradient(sp, x0), NondifferentiableError);
  SPoint xmax = good;
  xmax.x = sp.budget();
  CHECK_THROWS_AS(s_gradient(sp, xmax), NondifferentiableError);
}

TEST_CASE("dS/dsigma") {
  // Linear branch: 1/gamma exactly.
  const SurfaceParams sp = generic(64, "0.7");
  int linear = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    const SPoint pt = sample_point(sp, 2, i);
    if (tail_branch(sp, pt) != TailBranch::linear) continue;
    ++linear;
    CHECK(oracle::within_ulps(s_sigma_derivative(sp, pt), 1 / sp.gamma(), 2));
  }
  CHECK(linear > 0);
  // Entropy branch: compare with a difference quotient in sigma.
  const SurfaceParams se = generic(64, "0.021");
  const Real h = Real::pow2(-P.value / 3, P);
  int entropy = 0;
  for (std::size_t i = 0; i < 200 && entropy < 50; ++i) {
    const SPoint pt = sample_point(se, 3, i);
    if (tail_branch(se, pt) != TailBranch::entropy || pt.x.is_zero()) continue;
    const SurfaceParams lo = se.with_sigma(se.sigma() - h);
    const SurfaceParams hi = se.with_sigma(se.sigma() + h);
    if (pt.x > lo.budget() || tail_branch(lo, pt) != tail_branch(hi, pt)) continue;
    ++entropy;
    const Real fd = (s_value(hi, pt) - s_value(lo, pt)) / (2 * h);
    CHECK(abs(fd - s_sigma_derivative(se, pt)) < Real::pow2(-P.value / 4, P));
  }
  CHECK(entropy > 0);
}

TEST_CASE("gradient signs at the reference parameters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  for (std::size_t i = 0; checked < 100 && i < 1000; ++i) {
    const SurfaceParams sp = params71(R("1e-4") * Real(unit(rng), P));
    REQUIRE(check_conditions(sp).all());
    const SPoint pt = sample_point(sp, 9, i);
    std::vector<Real> g;
    try {
      g = s_gradient(sp, pt);
    } catch (const NondifferentiableError&) {
      continue;
    }
    ++checked;
    CHECK(g[0] < 0);
    for (std::size_t c = 1; c < g.size(); ++c) CHECK(g[c] > 0);
  }
  CHECK(checked == 100);
}

TEST_CASE("reduction from m=2 to m=1") {
  const SurfaceParams one(2, Real(1L, P), R("0.3"), {R("0.05")}, R("0.2"));
  const SurfaceParams two(2, Real(1L, P), R("0.3"), {R("0.05"), Real(P)}, R("0.2"));
  for (std::size_t i = 0; i < 200; ++i) {
    const SPoint p1 = sample_point(one, 4, i);
    const SPoint p2{p1.x, {p1.ts[0], Real(P)}};
    CHECK(oracle::within_ulps(s_value(one, p1), s_value(two, p2), 4));
  }
}

TEST_CASE("branch continuity on the seam") {
  // Choose x so that P/D = 1 - 1/q exactly: P = y + x + w, D = y + b + w.
  for (unsigned long q : {2UL, 4UL, 64UL}) {
    const SurfaceParams sp(q, Real(1L, P), R("0.25"), {R("0.03125")}, R("0.5"));
    const Real t = R("0.03125");
    const Real w = t;
    const Real d = sp.y() + sp.budget() + w;
    const Real x = d * (1 - Real(1L, P) / static_cast<long>(q)) - sp.y() - w;
    REQUIRE(x >= 0);
    const SPoint pt{x, {t}};
    const Real v = s_value(sp, pt);
    // Entropy-branch and linear-branch closed forms of the tail.
    const Real head = oracle::entropy(t, q) + (1 - t) * oracle::entropy((sp.y() + x + w) / (1 - t), q);
    const Real pv = sp.y() + x + w;
    const Real ent = head + d * oracle::entropy(pv / d, q);
    const Real lin = head + d - pv * oracle::logq(Real(static_cast<long>(q - 1), P), q);
    CHECK(oracle::within_bits(ent, lin, P.value - 16));
    CHECK(oracle::within_bits(v, ent, P.value - 16));
    // Both sides of the seam approach the same value.
    const Real eps = Real::pow2(-P.value / 2, P);
    CHECK(oracle::within_bits(s_value(sp, SPoint{x - eps, {t}}), v, P.value / 2 - 16));
    CHECK(oracle::within_bits(s_value(sp, SPoint{x + eps, {t}}), v, P.value / 2 - 16));
  }
}

TEST_CASE("conditions") {
  const SurfaceParams zero(64, Real(7L, P), R("0.5"), {Real(P), Real(P), Real(P)}, R("0.01"));
  const ConditionReport zr = check_conditions(zero);
  for (bool b : zr.c2) CHECK(b);
  for (bool b : zr.c4) CHECK(b);
  CHECK(zr.c4.size() == 2);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const ConditionReport r = check_conditions(params71(R("1e-4") * Real(unit(rng), P)));
    CHECK(r.all());
  }
  CHECK(check_conditions(params71(R("1e-4"))).all());

  const SurfaceParams fail(2, Real(1L, P), R("0.1"), {Real(P)}, R("0.2"));
  const ConditionReport fr = check_conditions(fail);
  CHECK_FALSE(fr.c1);
  CHECK(fr.c1_slack < 0);
  CHECK_FALSE(fr.all());
}

TEST_CASE("corner dominance and the linear objective at the reference parameters") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const CornerData cd = corner_data(xs71());
  const Real u(cd.u, P);
  for (int s = 0; s < 5; ++s) {
    const SurfaceParams sp = params71(R("1e-4") * Real(unit(rng), P));
    const Real corner = s_value(sp, cd.corner_point(P));
    for (std::size_t i = 0; i < 100; ++i) {
      const SPoint pt = sample_point(sp, 100 + static_cast<unsigned long>(s), i);
      CHECK(s_value(sp, pt) <= corner + 4 * corner.ulp());
      Real lin(P);
      for (std::size_t l = 0; l < pt.ts.size(); ++l) lin += static_cast<long>(l + 1) * pt.ts[l];
      CHECK(lin <= u + 4 * u.ulp());
    }
  }
}

TEST_CASE("sample points are feasible and sweeps agree") {
  const SurfaceParams sp = generic(64, "0.021");
  for (std::size_t i = 0; i < 300; ++i) {
    const SPoint pt = sample_point(sp, 8, i);
    CHECK(pt.x >= 0);
    CHECK(pt.x <= sp.budget());
    CHECK(region_contains(sp.xs(), pt.ts));
  }
  const Real ref = s_value(sp, corner_data(sp.xs()).corner_point(P));
  const SweepResult a = sweep_serial(sp, 21, 400, ref, Real(P));
  const SweepResult b = sweep_parallel(sp, 21, 400, ref, Real(P));
  CHECK(a.points == 400);
  CHECK(a.points == b.points);
  CHECK(a.exceed == b.exceed);
  CHECK(a.max_value == b.max_value);
}
