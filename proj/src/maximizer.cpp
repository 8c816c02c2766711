#include "codebounds/maximizer.hpp"

#include "codebounds/errors.hpp"
#include "codebounds/s_surface.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace codebounds {

namespace {

using Vec = std::vector<Real>;
using Mat = std::vector<Vec>;

// Variables are scaled to [0,1]: x = budget * u_0, t_l = t̄_l * u_l. Inactive
// coordinates (zero range) are dropped.
class BarrierProblem {
 public:
  explicit BarrierProblem(const SurfaceParams& sp) : sp_(sp), prec_(sp.precision()) {
    const CornerData cd = corner_data(sp.xs());
    ln_q_ = log(Real(static_cast<long>(sp.q()), prec_));
    ln_q1_ = log(Real(static_cast<long>(sp.q() - 1), prec_));
    seam_ = Real(mpq_class(static_cast<long>(sp.q() - 1), static_cast<long>(sp.q())), prec_);
    if (sp.budget() > 0) {
      x_index_ = 0;
      ranges_.push_back(sp.budget());
      kinds_.push_back(0);
    }
    for (std::size_t i = 0; i < sp.m(); ++i) {
      Real tb(cd.t_bar[i], prec_, MPFR_RNDZ);
      if (tb > 0) {
        ranges_.push_back(tb);
        kinds_.push_back(static_cast<long>(i + 1));
      }
    }
    has_t_ = ranges_.size() > (x_index_ == 0 ? 1U : 0U);
  }

  [[nodiscard]] std::size_t dim() const { return ranges_.size(); }
  [[nodiscard]] bool is_x(std::size_t k) const { return kinds_[k] == 0; }

  [[nodiscard]] Vec to_u(const SPoint& pt) const {
    Vec u(dim(), Real(prec_));
    for (std::size_t k = 0; k < dim(); ++k) {
      const Real& c = kinds_[k] == 0 ? pt.x : pt.ts[static_cast<std::size_t>(kinds_[k] - 1)];
      u[k] = c.with_precision(prec_) / ranges_[k];
    }
    return u;
  }
  [[nodiscard]] bool has_weighted() const { return has_t_; }

  [[nodiscard]] SPoint point(const Vec& u) const {
    SPoint pt{Real(prec_), Vec(sp_.m(), Real(prec_))};
    for (std::size_t k = 0; k < dim(); ++k) {
      if (kinds_[k] == 0) {
        pt.x = ranges_[k] * u[k];
      } else {
        pt.ts[static_cast<std::size_t>(kinds_[k] - 1)] = ranges_[k] * u[k];
      }
    }
    return pt;
  }

  // Coefficients of the linear forms P, Z, V, D and of the weighted slack in u.
  struct Forms {
    Real p, z, v, d, w;   // values
    Vec cp, cz, cv, cd, cw;
  };

  [[nodiscard]] Forms forms(const Vec& u) const {
    const std::size_t n = dim();
    Forms f{sp_.y(), 1 - sp_.y(), sp_.budget(), sp_.y() + sp_.budget(), sp_.weight_cap(),
            Vec(n, Real(prec_)), Vec(n, Real(prec_)), Vec(n, Real(prec_)), Vec(n, Real(prec_)), Vec(n, Real(prec_))};
    for (std::size_t k = 0; k < n; ++k) {
      const long l = kinds_[k];
      const Real& r = ranges_[k];
      if (l == 0) {
        f.cp[k] = r;
        f.cz[k] = -r;
        f.cv[k] = -r;
      } else {
        f.cp[k] = r * l;
        f.cz[k] = -(r * (l + 1));
        f.cd[k] = r * l;
        f.cw[k] = -(r * (l + 1));
      }
      f.p += f.cp[k] * u[k];
      f.z += f.cz[k] * u[k];
      f.v += f.cv[k] * u[k];
      f.d += f.cd[k] * u[k];
      f.w += f.cw[k] * u[k];
    }
    return f;
  }

  // Slacks of the box and weighted constraints; all must stay positive.
  [[nodiscard]] bool interior(const Vec& u) const {
    for (const Real& c : u) {
      if (c <= 0 || c >= 1) return false;
    }
    return !has_t_ || forms(u).w > 0;
  }

  // Largest step along du keeping every slack positive (times 0.99).
  [[nodiscard]] Real max_step(const Vec& u, const Vec& du) const {
    Real best(1L, prec_);
    auto limit = [&](const Real& slack, const Real& rate) {
      if (rate < 0) best = min(best, Real(0.99, prec_) * slack / -rate);
    };
    for (std::size_t k = 0; k < dim(); ++k) {
      limit(u[k], du[k]);
      limit(1 - u[k], -du[k]);
    }
    if (has_t_) {
      const Forms f = forms(u);
      Real rate(prec_);
      for (std::size_t k = 0; k < dim(); ++k) rate += f.cw[k] * du[k];
      limit(f.w, rate);
    }
    return best;
  }

  // ln(q) * S + mu * barrier, optionally with gradient and Hessian.
  Real evaluate(const Vec& u, const Real& mu, Vec* grad, Mat* hess) const {
    const std::size_t n = dim();
    const Forms f = forms(u);
    Real val(prec_);
    if (grad) grad->assign(n, Real(prec_));
    if (hess) hess->assign(n, Vec(n, Real(prec_)));

    // sign * L ln L for the linear form L with coefficients c.
    auto entropy_term = [&](const Real& l, const Vec& c, long sign) {
      if (l.is_zero()) return;
      const Real ln_l = log(l);
      val += sign * l * ln_l;
      if (grad) {
        for (std::size_t i = 0; i < n; ++i) (*grad)[i] += sign * (ln_l + 1) * c[i];
      }
      if (hess) {
        for (std::size_t i = 0; i < n; ++i) {
          if (c[i].is_zero()) continue;
          for (std::size_t j = 0; j < n; ++j) (*hess)[i][j] += sign * c[i] * c[j] / l;
        }
      }
    };
    auto barrier_term = [&](const Real& s, const Vec& c) {
      if (mu.is_zero()) return;
      val += mu * log(s);
      if (grad) {
        for (std::size_t i = 0; i < n; ++i) (*grad)[i] += mu * c[i] / s;
      }
      if (hess) {
        const Real s2 = s * s;
        for (std::size_t i = 0; i < n; ++i) {
          if (c[i].is_zero()) continue;
          for (std::size_t j = 0; j < n; ++j) (*hess)[i][j] -= mu * c[i] * c[j] / s2;
        }
      }
    };

    for (std::size_t k = 0; k < n; ++k) {
      Vec e(n, Real(prec_));
      e[k] = ranges_[k];
      if (kinds_[k] != 0) entropy_term(ranges_[k] * u[k], e, -1);
      Vec unit(n, Real(prec_));
      unit[k] = Real(1L, prec_);
      barrier_term(u[k], unit);
      unit[k] = Real(-1L, prec_);
      barrier_term(1 - u[k], unit);
    }
    if (has_t_) barrier_term(f.w, f.cw);
    entropy_term(f.p, f.cp, -1);
    entropy_term(f.z, f.cz, -1);
    if (f.p / f.d >= seam_) {
      entropy_term(f.p, f.cp, -1);
      entropy_term(f.v, f.cv, -1);
      entropy_term(f.d, f.cd, 1);
    } else {
      val += f.d * ln_q_ - f.p * ln_q1_;
      if (grad) {
        for (std::size_t i = 0; i < n; ++i) (*grad)[i] += f.cd[i] * ln_q_ - f.cp[i] * ln_q1_;
      }
    }
    return val;
  }

  [[nodiscard]] Vec start() const {
    Vec u(dim(), Real(0.5, prec_));
    if (has_t_) {
      // Pull the t coordinates in until the weighted slack is half its cap.
      Real used(prec_);
      const Forms f = forms(Vec(dim(), Real(prec_)));
      for (std::size_t k = 0; k < dim(); ++k) used -= f.cw[k] * Real(0.5, prec_);
      if (used > f.w / 2) {
        const Real scale = f.w / 2 / used;
        for (std::size_t k = 0; k < dim(); ++k) {
          if (kinds_[k] != 0) u[k] *= scale;
        }
      }
    }
    return u;
  }

  [[nodiscard]] std::size_t constraint_count() const { return 2 * dim() + (has_t_ ? 1 : 0); }
  [[nodiscard]] const Real& ln_q() const { return ln_q_; }
  [[nodiscard]] Bits precision() const { return prec_; }

 private:
  const SurfaceParams& sp_;
  Bits prec_;
  Real ln_q_, ln_q1_, seam_;
  long x_index_ = -1;
  Vec ranges_;
  std::vector<long> kinds_;  // 0 for x, l for t_l
  bool has_t_ = false;
};

// Solves A d = b for symmetric negative definite A by elimination with
// partial pivoting.
Vec solve(Mat a, Vec b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    if (a[c][c].is_zero()) throw std::runtime_error("singular Newton system");
    for (std::size_t r = c + 1; r < n; ++r) {
      const Real f = a[r][c] / a[c][c];
      if (f.is_zero()) continue;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  Vec x(n, Real(b.empty() ? kMinPrecision : b[0].precision()));
  for (std::size_t i = n; i-- > 0;) {
    Real s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

constexpr long kCoarseBits = 128;

SurfaceParams at_precision(const SurfaceParams& sp, Bits prec) {
  std::vector<Real> xs;
  for (const Real& x : sp.xs()) xs.push_back(x.with_precision(prec));
  return {sp.q(), sp.gamma().with_precision(prec), sp.y().with_precision(prec), std::move(xs),
          sp.sigma().with_precision(prec)};
}

// Coarse barrier solve, then Newton on the KKT system of the constraints
// found active, at full precision. Accepted only when the concavity bound
// certifies the result to within tol.
std::optional<MaximizeResult> polished_maximum(const SurfaceParams& sp, const Real& tol) {
  const Bits prec = sp.precision();
  const BarrierProblem bp(sp);
  Vec u;
  int steps = 0;
  try {
    const SurfaceParams low = at_precision(sp, Bits{kCoarseBits});
    const MaximizeResult coarse = maximize_surface(low, Real::pow2(-40, Bits{kCoarseBits}));
    if (BarrierProblem(low).dim() != bp.dim()) return std::nullopt;
    u = bp.to_u(coarse.point);
    steps = coarse.newton_steps;
  } catch (const std::exception&) {
    return std::nullopt;
  }

  enum class Face { free, lower, upper };
  const std::size_t n = bp.dim();
  const Real near = Real::pow2(-24, prec);
  std::vector<Face> face(n, Face::free);
  for (std::size_t k = 0; k < n; ++k) {
    if (bp.is_x(k) && u[k] < near) {
      face[k] = Face::lower;
      u[k] = Real(prec);
    } else if (1 - u[k] < near) {
      face[k] = Face::upper;
      u[k] = Real(1L, prec);
    }
  }
  auto free_t = [&] {
    for (std::size_t k = 0; k < n; ++k) {
      if (!bp.is_x(k) && face[k] == Face::free) return true;
    }
    return false;
  };
  bool weighted = bp.has_weighted() && bp.forms(u).w < near * sp.weight_cap() && free_t();

  const Real zero_mu(prec);
  const Real step_tol = Real::pow2(24 - prec.value, prec);
  const Real loose_tol = Real::pow2(-prec.value / 4, prec);
  const Real mult_tol = Real::pow2(48 - prec.value, prec);
  bool kkt = false;
  for (int round = 0; round < 16 && !kkt; ++round) {
    // Newton on the current face, stopping at the first blocking constraint.
    bool converged = false;
    Real prev_norm(prec);
    for (int it = 0; it < 60 && !converged; ++it, ++steps) {
      std::vector<std::size_t> fr;
      for (std::size_t k = 0; k < n; ++k) {
        if (face[k] == Face::free) fr.push_back(k);
      }
      if (fr.empty()) {
        converged = true;
        break;
      }
      Vec g;
      Mat h;
      bp.evaluate(u, zero_mu, &g, &h);
      const auto f = bp.forms(u);
      const std::size_t dim = fr.size() + (weighted ? 1 : 0);
      Mat a(dim, Vec(dim, Real(prec)));
      Vec b(dim, Real(prec));
      for (std::size_t i = 0; i < fr.size(); ++i) {
        for (std::size_t j = 0; j < fr.size(); ++j) a[i][j] = h[fr[i]][fr[j]];
        b[i] = -g[fr[i]];
        if (weighted) a[i][dim - 1] = a[dim - 1][i] = f.cw[fr[i]];
      }
      if (weighted) b[dim - 1] = -f.w;
      Vec d;
      try {
        d = solve(a, b);
      } catch (const std::runtime_error&) {
        return std::nullopt;
      }
      Real alpha(1L, prec);
      long block = -1;
      bool block_w = false;
      for (std::size_t i = 0; i < fr.size(); ++i) {
        const std::size_t k = fr[i];
        if (d[i] > 0 && u[k] + d[i] > 1) {
          const Real r = (1 - u[k]) / d[i];
          if (r < alpha) {
            alpha = r;
            block = static_cast<long>(k);
          }
        } else if (d[i] < 0 && bp.is_x(k) && u[k] + d[i] < 0) {
          const Real r = u[k] / -d[i];
          if (r < alpha) {
            alpha = r;
            block = static_cast<long>(k);
          }
        } else if (d[i] < 0 && !bp.is_x(k) && u[k] + d[i] < u[k] / 2) {
          const Real r = u[k] / (-2 * d[i]);
          if (r < alpha) {
            alpha = r;
            block = -1;
          }
        }
      }
      if (bp.has_weighted() && !weighted) {
        Real rate(prec);
        for (std::size_t i = 0; i < fr.size(); ++i) rate += f.cw[fr[i]] * d[i];
        if (rate < 0 && f.w + rate < 0) {
          const Real r = f.w / -rate;
          if (r < alpha) {
            alpha = r;
            block = -1;
            block_w = true;
          }
        }
      }
      Real norm(prec);
      for (std::size_t i = 0; i < fr.size(); ++i) {
        u[fr[i]] += alpha * d[i];
        norm = max(norm, abs(alpha * d[i]));
      }
      if (block >= 0) {
        const auto k = static_cast<std::size_t>(block);
        face[k] = d[std::find(fr.begin(), fr.end(), k) - fr.begin()] > 0 ? Face::upper : Face::lower;
        u[k] = face[k] == Face::upper ? Real(1L, prec) : Real(prec);
        if (weighted && !free_t()) weighted = false;
      }
      if (block_w) weighted = true;
      // Below the loose tolerance a step that fails to halve is rounding
      // noise; the concavity bound below decides whether the point is good.
      const bool stalled = norm <= loose_tol && norm * 2 >= prev_norm;
      converged = block < 0 && !block_w && (norm <= step_tol || stalled);
      prev_norm = block < 0 && !block_w ? norm : Real(prec);
    }
    if (!converged) return std::nullopt;

    // Multipliers of the fixed coordinates and the weighted constraint.
    Vec g;
    bp.evaluate(u, zero_mu, &g, nullptr);
    const auto f = bp.forms(u);
    Real nu(prec);
    if (weighted) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!bp.is_x(k) && face[k] == Face::free) {
          nu = g[k] / -f.cw[k];
          break;
        }
      }
    }
    Real worst(prec);
    long release = -1;
    bool release_w = false;
    if (weighted && nu < -mult_tol) {
      worst = nu;
      release_w = true;
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (face[k] == Face::free) continue;
      Real mult = face[k] == Face::lower ? -g[k] : g[k] + (weighted ? nu * f.cw[k] : Real(prec));
      mult /= max(abs(g[k]), Real(1L, prec));
      if (mult < -mult_tol && mult < worst) {
        worst = mult;
        release = static_cast<long>(k);
        release_w = false;
      }
    }
    if (release >= 0) {
      face[static_cast<std::size_t>(release)] = Face::free;
      // Step off the bound so the Newton ratio test does not pin it there.
      auto& c = u[static_cast<std::size_t>(release)];
      c = c.is_zero() ? near : 1 - near;
    } else if (release_w) {
      weighted = false;
    } else {
      kkt = true;
    }
  }
  if (!kkt) return std::nullopt;

  // Rounding can leave the weighted constraint violated by a few ulps.
  for (int shrink = 0; shrink < 8; ++shrink) {
    SPoint pt = bp.point(u);
    Real value(prec);
    try {
      value = s_value(sp, pt);
    } catch (const DomainError&) {
      for (std::size_t k = 0; k < bp.dim(); ++k) {
        if (!bp.is_x(k)) u[k] *= 1 - step_tol;
      }
      continue;
    }
    const auto upper = concave_upper_bound(sp, pt);
    if (!upper) return std::nullopt;
    const Real gap = max(*upper - value, Real(prec));
    if (gap > tol) return std::nullopt;
    return MaximizeResult{std::move(value), std::move(pt), gap, steps, true};
  }
  return std::nullopt;
}

}  // namespace

MaximizeResult maximize_surface(const SurfaceParams& sp, const Real& tol) {
  const BarrierProblem bp(sp);
  const Bits prec = bp.precision();
  if (bp.dim() == 0) {
    SPoint pt{Real(prec), Vec(sp.m(), Real(prec))};
    Real v = s_value(sp, pt);
    return {v, pt, Real(prec), 0};
  }
  if (prec.value > 2 * kCoarseBits) {
    if (auto r = polished_maximum(sp, tol)) return std::move(*r);
  }

  const Real tol_ln = tol * bp.ln_q();
  const auto k = static_cast<long>(bp.constraint_count());
  Vec u = bp.start();
  Real mu(1L, prec);
  int steps = 0;
  const int max_steps = 40 * static_cast<int>(prec.value);
  for (;;) {
    // Center for the current mu.
    for (int inner = 0; inner < 200; ++inner) {
      Vec g;
      Mat h;
      const Real f0 = bp.evaluate(u, mu, &g, &h);
      Vec neg(g.size(), Real(prec));
      for (std::size_t i = 0; i < g.size(); ++i) neg[i] = -g[i];
      const Vec du = solve(h, neg);
      Real decrement(prec);
      for (std::size_t i = 0; i < g.size(); ++i) decrement += g[i] * du[i];
      if (decrement <= tol_ln / 16) break;
      Real alpha = bp.max_step(u, du);
      bool moved = false;
      for (int bt = 0; bt < 80; ++bt) {
        Vec trial(u);
        for (std::size_t i = 0; i < u.size(); ++i) trial[i] += alpha * du[i];
        if (bp.interior(trial) && bp.evaluate(trial, mu, nullptr, nullptr) >= f0 + alpha * decrement / 4) {
          u = std::move(trial);
          moved = true;
          break;
        }
        alpha /= 2;
      }
      if (++steps > max_steps) throw std::runtime_error("barrier Newton did not converge");
      if (!moved) break;
    }
    if (mu * k <= tol_ln / 4) break;
    mu /= 32;
  }
  SPoint pt = bp.point(u);
  Real value = s_value(sp, pt);
  return {std::move(value), std::move(pt), mu * k / bp.ln_q(), steps};
}

std::optional<Real> concave_upper_bound(const SurfaceParams& sp, const SPoint& pt) {
  const Bits prec = sp.precision();
  const Real value = s_value(sp, pt);
  const CornerData cd = corner_data(sp.xs());
  const std::size_t m = sp.m();

  Real w(prec);
  Real z = 1 - sp.y() - pt.x;
  for (std::size_t i = 0; i < m; ++i) {
    w += pt.ts[i] * static_cast<long>(i + 1);
    z -= pt.ts[i] * static_cast<long>(i + 2);
  }
  const Real p = sp.y() + pt.x + w;
  const Real d = sp.y() + sp.budget() + w;
  const Real seam(mpq_class(static_cast<long>(sp.q() - 1), static_cast<long>(sp.q())), prec);
  const bool entropy = p / d >= seam;
  const Real ln_q = log(Real(static_cast<long>(sp.q()), prec));
  const Real ln_q1 = log(Real(static_cast<long>(sp.q() - 1), prec));
  const Real ln_z = log(z);
  const Real ln_p = log(p);

  // Linear gain of moving from pt to the best vertex.
  Real gain(prec);
  if (sp.budget() > 0) {
    Real gx(prec);
    if (entropy) {
      const Real v = sp.budget() - pt.x;
      if (v <= 0) return std::nullopt;
      gx = (ln_z + log(v) - 2 * ln_p) / ln_q;
    } else {
      gx = (ln_z - ln_p - ln_q1) / ln_q;
    }
    gain += gx * ((gx > 0 ? sp.budget() : Real(prec)) - pt.x);
  }

  struct Item {
    Real g, range, weight, at;
  };
  std::vector<Item> items;
  const Real ln_d = log(d);
  for (std::size_t i = 0; i < m; ++i) {
    const Real range(cd.t_bar[i], prec);
    if (range.is_zero()) continue;
    if (pt.ts[i].sign() <= 0) return std::nullopt;
    const long l = static_cast<long>(i + 1);
    Real num = (l + 1) * ln_z - log(pt.ts[i]);
    num += entropy ? l * ln_d - 2 * l * ln_p : l * (ln_q - ln_p - ln_q1);
    items.push_back({num / ln_q, range, Real(l + 1, prec), pt.ts[i]});
  }
  // Fractional knapsack over the weighted constraint.
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return items[a].g / items[a].weight > items[b].g / items[b].weight;
  });
  Real room = sp.weight_cap();
  for (std::size_t k : order) {
    const Item& it = items[k];
    Real take(prec);
    if (it.g > 0 && room > 0) take = min(it.range, room / it.weight);
    room -= take * it.weight;
    gain += it.g * (take - it.at);
  }
  return value + gain;
}

}  // namespace codebounds
