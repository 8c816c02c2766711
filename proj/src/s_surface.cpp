#include "codebounds/s_surface.hpp"

#include "codebounds/entropy.hpp"
#include "codebounds/errors.hpp"

#include <omp.h>

#include <exception>
#include <random>
#include <stdexcept>
#include <string>

namespace codebounds {

namespace {

// Half-width of the band around the branch seam, in bits below the working
// precision, where both tail formulas are evaluated and compared.
constexpr long kSeamGuardBits = 64;

std::vector<mpq_class> exact(const std::vector<Real>& v) {
  std::vector<mpq_class> out;
  out.reserve(v.size());
  for (const Real& r : v) out.push_back(r.to_rational());
  return out;
}

Real sum_weighted(const std::vector<Real>& v, long offset, Bits prec) {
  Real s(prec);
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * static_cast<long>(i + 1 + offset);
  return s;
}

// Empty when ts is in the region of xs, else a description of the first
// violated constraint.
std::string region_violation(const std::vector<Real>& xs, const std::vector<Real>& ts) {
  if (xs.size() != ts.size()) throw InputError("xs and ts must have the same length");
  const CornerData cd = corner_data(xs);
  const auto t = exact(ts);
  mpq_class lhs = 0;
  mpq_class cap = 0;
  const auto xq = exact(xs);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const std::string name = "t_" + std::to_string(i + 1);
    if (sgn(t[i]) < 0) return name + " < 0";
    if (t[i] > cd.t_bar[i]) return name + " exceeds its upper bound t̄_" + std::to_string(i + 1);
    lhs += t[i] * static_cast<long>(i + 2);
    cap += xq[i] * static_cast<long>(i + 2);
  }
  if (lhs > 2 * cap) return "weighted constraint sum (l+1) t_l <= 2 sum (l+1) x_l";
  return {};
}

// Shared pieces of S at a point: P = y+x+w, D = y+sigma/gamma+w, w = sum l t_l.
struct Pieces {
  Real p, d, ratio, seam;
  bool near_seam = false;
};

Pieces pieces(const SurfaceParams& sp, const SPoint& pt) {
  const Bits prec = sp.precision();
  Real w(prec);
  for (std::size_t i = 0; i < pt.ts.size(); ++i) w += pt.ts[i] * static_cast<long>(i + 1);
  Pieces out{sp.y() + pt.x + w, sp.y() + sp.budget() + w, Real(prec), Real(prec)};
  out.ratio = out.p / out.d;
  out.seam = Real(mpq_class(static_cast<long>(sp.q() - 1), static_cast<long>(sp.q())), prec);
  out.near_seam = abs(out.ratio - out.seam) <= Real::pow2(kSeamGuardBits - prec.value, prec);
  return out;
}

Real tail_entropy(const QaryLog& lq, const Real& p, const Real& d) { return d * lq.entropy(p / d); }

Real tail_linear(const QaryLog& lq, const Real& p, const Real& d) {
  return d - p * lq.log(Real(static_cast<long>(lq.q() - 1), p.precision()));
}

void check_point(const SurfaceParams& sp, const SPoint& pt) {
  if (pt.ts.size() != sp.m()) throw InputError("point has " + std::to_string(pt.ts.size()) + " t values, expected m = " + std::to_string(sp.m()));
  if (pt.x < 0) throw DomainError("x < 0");
  if (pt.x > sp.budget()) throw DomainError("x > sigma/gamma");
  if (auto v = region_violation(sp.xs(), pt.ts); !v.empty()) throw DomainError(v);
}

}  // namespace

SurfaceParams::SurfaceParams(unsigned long q, Real gamma, Real y, std::vector<Real> xs, Real sigma)
    : q_(q), gamma_(std::move(gamma)), y_(std::move(y)), xs_(std::move(xs)), sigma_(std::move(sigma)),
      budget_(y_.precision()), weight_cap_(y_.precision()) {
  if (q_ < 2) throw InputError("q must be >= 2");
  if (xs_.empty()) throw InputError("m must be >= 1");
  if (gamma_ <= 0) throw DomainError("gamma must be positive");
  if (y_ <= 0) throw DomainError("y must be positive");
  if (sigma_ < 0) throw DomainError("sigma must be non-negative");
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (xs_[i] < 0) throw DomainError("x_" + std::to_string(i + 1) + " must be non-negative");
  }
  budget_ = sigma_ / gamma_;
  weight_cap_ = 2 * sum_weighted(xs_, 1, y_.precision());
  if (y_ + weight_cap_ + budget_ >= 1) {
    throw DomainError("y + 2 sum (l+1) x_l + sigma/gamma must be < 1");
  }
}

SurfaceParams SurfaceParams::with_sigma(const Real& sigma) const { return {q_, gamma_, y_, xs_, sigma}; }

bool CornerData::feasible() const { return sgn(t_star.front()) >= 0; }

SPoint CornerData::corner_point(Bits prec) const {
  SPoint pt{Real(prec), {}};
  for (std::size_t i = 0; i < t_bar.size(); ++i) {
    pt.ts.emplace_back(i == 0 ? t_star[0] : t_bar[i], prec, MPFR_RNDZ);
  }
  return pt;
}

CornerData corner_data(const std::vector<Real>& xs) { return corner_data(exact(xs)); }

CornerData corner_data(const std::vector<mpq_class>& xs) {
  const std::size_t m = xs.size();
  if (m == 0) throw InputError("m must be >= 1");
  for (const auto& x : xs) {
    if (sgn(x) < 0) throw InputError("x_l must be non-negative");
  }
  CornerData cd;
  cd.t_bar.assign(m, 0);
  mpq_class tail = 0;  // sum_{nu > l} x_nu
  for (std::size_t i = m; i-- > 0;) {
    cd.t_bar[i] = 2 * xs[i] + tail;
    tail += xs[i];
  }
  mpq_class rhs = 0;
  for (std::size_t i = 0; i < m; ++i) rhs += 2 * static_cast<long>(i + 2) * xs[i];
  for (std::size_t i = 1; i < m; ++i) rhs -= static_cast<long>(i + 2) * cd.t_bar[i];
  cd.t_star.assign(m, 0);
  cd.t_star[0] = rhs / 2;
  // (l+1)(t*_l - t̄_l) = l (t*_{l-1} - t̄_{l-1})
  for (std::size_t i = 1; i < m; ++i) {
    const long l = static_cast<long>(i + 1);
    cd.t_star[i] = cd.t_bar[i] + mpq_class(l, l + 1) * (cd.t_star[i - 1] - cd.t_bar[i - 1]);
  }
  cd.u = cd.t_star[0];
  for (std::size_t i = 1; i < m; ++i) cd.u += static_cast<long>(i + 1) * cd.t_bar[i];
  return cd;
}

bool ConditionReport::all() const {
  if (!c1 || !c3 || !corner_feasible) return false;
  for (bool b : c2) {
    if (!b) return false;
  }
  for (bool b : c4) {
    if (!b) return false;
  }
  return true;
}

ConditionReport check_conditions(const SurfaceParams& sp) {
  const Bits prec = sp.precision();
  const CornerData cd = corner_data(sp.xs());
  const std::size_t m = sp.m();
  const Real& s = sp.budget();
  const Real& y = sp.y();
  const Real u(cd.u, prec);
  ConditionReport rep;
  rep.corner_feasible = cd.feasible();

  rep.c1_slack = y / static_cast<long>(sp.q() - 1) - s;
  rep.c1 = rep.c1_slack >= 0;

  const Real base = y + s + u;
  const Real free = 1 - y - s - sp.weight_cap();
  const Real ys = y + s;
  for (std::size_t i = 0; i < m; ++i) {
    const long l = static_cast<long>(i + 1);
    Real slack = pow(free, l + 1) * pow(ys, l) - Real(cd.t_bar[i], prec) * pow(base, 2 * l);
    rep.c2.push_back(slack > 0);
    rep.c2_slack.push_back(std::move(slack));
  }

  rep.c3_slack = y * y - s * (1 - y);
  rep.c3 = rep.c3_slack > 0;

  for (std::size_t i = 0; i + 1 < m; ++i) {
    const long l = static_cast<long>(i + 1);
    Real slack = pow(Real(cd.t_star[i], prec), l + 2) - pow(Real(cd.t_bar[i + 1], prec), l + 1) * base;
    rep.c4.push_back(slack >= 0);
    rep.c4_slack.push_back(std::move(slack));
  }
  return rep;
}

bool region_contains(const std::vector<Real>& xs, const std::vector<Real>& ts) {
  return region_violation(xs, ts).empty();
}

TailBranch tail_branch(const SurfaceParams& sp, const SPoint& pt) {
  const Pieces pc = pieces(sp, pt);
  return pc.ratio >= pc.seam ? TailBranch::entropy : TailBranch::linear;
}

namespace {

// Two-branch tail; near the seam both closed forms are evaluated with guard
// bits and must agree.
Real tail_value(const SurfaceParams& sp, const Pieces& pc, const QaryLog& lq) {
  if (!pc.near_seam) return pc.ratio >= pc.seam ? tail_entropy(lq, pc.p, pc.d) : tail_linear(lq, pc.p, pc.d);
  const Bits prec = sp.precision();
  const Bits wide{prec.value + 32};
  const QaryLog lw(sp.q(), wide);
  const Real pw = pc.p.with_precision(wide);
  const Real dw = pc.d.with_precision(wide);
  const Real te = tail_entropy(lw, pw, dw);
  const Real tl = tail_linear(lw, pw, dw);
  const Real scale = max(max(abs(te), abs(tl)), Real(1L, prec));
  if (abs(te - tl) > 4 * scale.with_precision(prec).ulp()) {
    throw std::logic_error("tail branches disagree at the seam");
  }
  return te.with_precision(prec);
}

}  // namespace

Real s_value(const SurfaceParams& sp, const SPoint& pt) {
  check_point(sp, pt);
  const Bits prec = sp.precision();
  const QaryLog lq(sp.q(), prec);

  Real head(prec);
  Real acc(prec);
  for (std::size_t i = sp.m(); i-- > 0;) {
    const Real rem = 1 - acc;
    if (!pt.ts[i].is_zero()) head += rem * lq.entropy(pt.ts[i] / rem);
    acc += pt.ts[i];
  }
  const Pieces pc = pieces(sp, pt);
  const Real rem = 1 - acc;
  const Real middle = rem * lq.entropy(pc.p / rem);
  return head + middle + tail_value(sp, pc, lq);
}

Real s_value_simplified(const SurfaceParams& sp, const SPoint& pt) {
  check_point(sp, pt);
  const QaryLog lq(sp.q(), sp.precision());
  const Pieces pc = pieces(sp, pt);
  Real z = 1 - sp.y() - pt.x;
  Real out(sp.precision());
  for (std::size_t i = 0; i < sp.m(); ++i) {
    z -= pt.ts[i] * static_cast<long>(i + 2);
    out -= lq.xlog(pt.ts[i]);
  }
  out -= lq.xlog(pc.p) + lq.xlog(z);
  return out + tail_value(sp, pc, lq);
}

std::vector<Real> s_gradient(const SurfaceParams& sp, const SPoint& pt) {
  check_point(sp, pt);
  const Bits prec = sp.precision();
  if (pt.x <= 0 || pt.x >= sp.budget()) throw NondifferentiableError("x must lie strictly inside (0, sigma/gamma)");
  const CornerData cd = corner_data(sp.xs());
  const auto t = exact(pt.ts);
  mpq_class weighted = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (sgn(t[i]) <= 0 || t[i] >= cd.t_bar[i]) {
      throw NondifferentiableError("t_" + std::to_string(i + 1) + " on the region boundary");
    }
    weighted += t[i] * static_cast<long>(i + 2);
  }
  if (weighted >= sp.weight_cap().to_rational()) throw NondifferentiableError("weighted constraint is active");
  const Pieces pc = pieces(sp, pt);
  if (pc.near_seam) throw NondifferentiableError("point on the branch seam");
  const bool entropy = pc.ratio >= pc.seam;

  const QaryLog lq(sp.q(), prec);
  Real z = 1 - sp.y() - pt.x;
  for (std::size_t i = 0; i < pt.ts.size(); ++i) z -= pt.ts[i] * static_cast<long>(i + 2);
  const Real ln_z = log(z);
  const Real ln_p = log(pc.p);
  const Real ln_q1 = log(Real(static_cast<long>(sp.q() - 1), prec));

  std::vector<Real> g;
  g.reserve(sp.m() + 1);
  if (entropy) {
    g.push_back((ln_z + log(sp.budget() - pt.x) - 2 * ln_p) / lq.ln_q());
  } else {
    g.push_back((ln_z - ln_p - ln_q1) / lq.ln_q());
  }
  const Real ln_d = log(pc.d);
  for (std::size_t i = 0; i < sp.m(); ++i) {
    const long l = static_cast<long>(i + 1);
    Real num = (l + 1) * ln_z - log(pt.ts[i]);
    if (entropy) {
      num += l * ln_d - 2 * l * ln_p;
    } else {
      num += l * (lq.ln_q() - ln_p - ln_q1);
    }
    g.push_back(num / lq.ln_q());
  }
  return g;
}

Real s_sigma_derivative(const SurfaceParams& sp, const SPoint& pt) {
  check_point(sp, pt);
  const Pieces pc = pieces(sp, pt);
  if (pc.ratio < pc.seam) return 1 / sp.gamma();
  if (pt.x >= sp.budget()) throw NondifferentiableError("dS/dsigma is unbounded at x = sigma/gamma");
  const QaryLog lq(sp.q(), sp.precision());
  return lq.log(pc.d / (sp.budget() - pt.x)) / sp.gamma();
}

SPoint sample_point(const SurfaceParams& sp, unsigned long seed, std::size_t index) {
  const Bits prec = sp.precision();
  std::seed_seq seq{static_cast<unsigned long>(seed), static_cast<unsigned long>(index), 0x5eedUL};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const CornerData cd = corner_data(sp.xs());
  SPoint pt{sp.budget() * Real(unit(rng), prec), {}};
  Real weighted(prec);
  for (std::size_t i = 0; i < sp.m(); ++i) {
    pt.ts.push_back(Real(cd.t_bar[i], prec, MPFR_RNDZ) * Real(unit(rng), prec));
    weighted += pt.ts[i] * static_cast<long>(i + 2);
  }
  if (weighted > sp.weight_cap()) {
    const Real shrink = sp.weight_cap() / weighted * Real(0.5 + 0.5 * unit(rng), prec) * Real(1.0 - 0x1p-40, prec);
    for (auto& t : pt.ts) t *= shrink;
  }
  return pt;
}

SweepResult sweep_serial(const SurfaceParams& sp, unsigned long seed, std::size_t count, const Real& reference,
                         const Real& tol) {
  SweepResult out{Real(sp.precision()), 0, count};
  bool first = true;
  for (std::size_t i = 0; i < count; ++i) {
    const Real v = s_value(sp, sample_point(sp, seed, i));
    if (v > reference + tol) ++out.exceed;
    if (first || v > out.max_value) out.max_value = v;
    first = false;
  }
  return out;
}

SweepResult sweep_parallel(const SurfaceParams& sp, unsigned long seed, std::size_t count, const Real& reference,
                           const Real& tol) {
  std::vector<Real> values(count, Real(sp.precision()));
  const long n = static_cast<long>(count);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    try {
      values[static_cast<std::size_t>(i)] = s_value(sp, sample_point(sp, seed, static_cast<std::size_t>(i)));
    } catch (...) {
#pragma omp critical(sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  SweepResult out{Real(sp.precision()), 0, count};
  for (std::size_t i = 0; i < count; ++i) {
    if (values[i] > reference + tol) ++out.exceed;
    if (i == 0 || values[i] > out.max_value) out.max_value = values[i];
  }
  return out;
}

}  // namespace codebounds
