#include "codebounds/rate_bounds.hpp"

#include "codebounds/entropy.hpp"
#include "codebounds/errors.hpp"
#include "codebounds/rational.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace codebounds {

BoundProblem::BoundProblem(IharaProfile profile_, Real delta_, std::vector<Real> xs_, Bits precision_)
    : profile(std::move(profile_)), delta(delta_.with_precision(precision_)), precision(precision_) {
  if (xs_.empty()) throw InputError("m must be >= 1");
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (xs_[i] < 0) throw DomainError("x_" + std::to_string(i + 1) + " must be non-negative");
    xs.push_back(xs_[i].with_precision(precision));
  }
  if (delta <= 0) throw DomainError("delta must be positive");
  if (y() <= 0) throw DomainError("delta must be < 1 - 2 sum (l+1) x_l");
}

Real BoundProblem::y() const {
  Real used(precision);
  for (std::size_t i = 0; i < xs.size(); ++i) used += xs[i] * static_cast<long>(i + 2);
  return 1 - delta - 2 * used;
}

BoundResult r_general(const BoundProblem& bp) {
  const Bits prec = bp.precision;
  const IharaProfile& prof = bp.profile;
  const QaryLog lq(prof.q, prec);
  const Real gamma = prof.gamma.with_precision(prec);

  Real sx(prec);
  Real penalty(prec);
  Real xlogs(prec);
  for (std::size_t i = 0; i < bp.xs.size(); ++i) {
    sx += bp.xs[i];
    penalty -= bp.xs[i] * static_cast<long>(i + 4);
    xlogs += lq.xlog(bp.xs[i]);
  }
  Real x_entropy(prec);
  if (!sx.is_zero()) {
    x_entropy = sx * lq.log(Real(static_cast<long>(prof.q - 1), prec)) - xlogs - lq.xlog(1 - sx);
  }

  PsiResult pr = psi_value(PsiProblem(prof, bp.y(), bp.xs, prec));
  BoundComponents c{1 - bp.delta - 1 / gamma, x_entropy, penalty, pr.psi / gamma};
  Real value = c.tvz + c.x_entropy + c.linear_penalty + c.psi_part;
  return {std::move(value), std::move(pr.psi), std::move(c), std::move(pr.diagnostics)};
}

BoundResult r_lin(const IharaProfile& profile, const Real& delta, Bits precision) {
  if (delta <= 0 || delta >= 1) throw DomainError("delta must lie in (0,1)");
  return r_general(BoundProblem(profile, delta, {Real(precision)}, precision));
}

nlohmann::json BoundResult::to_json(int digits) const {
  auto s = [&](const Real& v) { return v.to_string(digits); };
  return {{"value", s(value)},
          {"psi", s(psi)},
          {"components",
           {{"tvz", s(components.tvz)},
            {"x_entropy", s(components.x_entropy)},
            {"linear_penalty", s(components.linear_penalty)},
            {"psi_part", s(components.psi_part)}}},
          {"psi_diagnostics", psi_diagnostics.to_json(digits)}};
}

namespace {

struct SeedExample {
  unsigned long q;
  const char* delta;
  std::vector<const char*> xs;
};

const std::vector<SeedExample>& seed_examples() {
  static const std::vector<SeedExample> table = {
      {64, "13763868443250238929521503984833381597731412559044/46065097831342932365531985486767649347321318605709",
       {"3.41e-16", "1.0634e-23", "1.93e-31"}},
      {64, "32301229388092693436010481501934267749589906046665/46065097831342932365531985486767649347321318605709",
       {"3.89e-18", "1.98e-26", "5.87e-35"}},
      {49, "7334559589562321721169749749908497945081695123431/18755194537338788993696079784908084949457099261873",
       {"1.93e-13", "1.53e-19", "7.08e-26"}},
      {49, "11420634947776467272526330034999587004375404138442/18755194537338788993696079784908084949457099261873",
       {"5.86e-14", "3.207e-20", "1.02e-26"}},
      {2097152, "1034323484865452473463726110309814032498446010098/99621193732964014413326435515634059733734238550355",
       {"6.29e-65", "7.09e-97"}},
      {2097152, "98586870248098561939862709405324245701235792540257/99621193732964014413326435515634059733734238550355",
       {"6.5e-86", "2.4e-127"}},
  };
  return table;
}

constexpr double kLogLo = -130.0;
constexpr double kLogHi = -5.0;

Real from_log10(double e, Bits prec) { return exp(Real(e, prec) * log(Real(10L, prec))); }

double to_log10(const Real& x) {
  if (x.is_zero()) return kLogLo;
  return std::clamp((log(x) / log(Real(10L, x.precision()))).to_double(), kLogLo, kLogHi);
}

}  // namespace

std::vector<Real> optimizer_seed(unsigned long q, const Real& delta, std::size_t m, Bits prec) {
  const SeedExample* best = nullptr;
  Real best_dist(prec);
  for (const auto& ex : seed_examples()) {
    if (ex.q != q) continue;
    const Real dist = abs(parse_real(ex.delta, prec) - delta);
    if (!best || dist < best_dist) {
      best = &ex;
      best_dist = dist;
    }
  }
  std::vector<Real> xs;
  if (best) {
    for (const char* s : best->xs) xs.push_back(parse_real(s, prec));
  } else {
    xs.push_back(parse_real("1e-12", prec));
  }
  while (xs.size() > m) xs.pop_back();
  while (xs.size() < m) {
    // Continue the geometric decay of the last two entries.
    const Real ratio = xs.size() >= 2 ? xs.back() / xs[xs.size() - 2] : parse_real("1e-8", prec);
    xs.push_back(max(xs.back() * ratio, parse_real("1e-130", prec)));
  }
  return xs;
}

OptimizeResult optimize_x(const IharaProfile& profile, const Real& delta, std::size_t m, int budget, Bits prec) {
  if (m < 1) throw InputError("m must be >= 1");
  if (budget < static_cast<int>(m)) throw InputError("budget must be at least m");
  OptimizeResult out{std::vector<Real>(m, Real(prec)), r_lin(profile, delta, prec), r_lin(profile, delta, prec), 0};

  auto evaluate = [&](const std::vector<Real>& xs) -> std::optional<BoundResult> {
    ++out.evaluations;
    try {
      return r_general(BoundProblem(profile, delta, xs, prec));
    } catch (const DomainError&) {
      return std::nullopt;
    }
  };
  auto consider = [&](const std::vector<Real>& xs, const std::optional<BoundResult>& r) {
    if (r && r->value > out.result.value) {
      out.result = *r;
      out.xs = xs;
    }
  };

  // The search point starts at the seed and follows every improvement.
  std::vector<Real> point = optimizer_seed(profile.q, delta, m, prec);
  consider(point, evaluate(point));
  std::vector<double> logs;
  for (const Real& x : point) logs.push_back(to_log10(x));

  const double phi = (std::sqrt(5.0) - 1) / 2;
  const Real infeasible(-1000L, prec);
  for (double width = 3.0; width > 1e-6 && out.evaluations < budget; width /= 2) {
    for (std::size_t l = 0; l < m && out.evaluations < budget; ++l) {
      auto probe = [&](double e) {
        std::vector<Real> xs = point;
        xs[l] = from_log10(e, prec);
        const auto r = evaluate(xs);
        consider(xs, r);
        return r ? r->value : infeasible;
      };
      double a = std::max(kLogLo, logs[l] - width);
      double b = std::min(kLogHi, logs[l] + width);
      double c = b - phi * (b - a);
      double d = a + phi * (b - a);
      Real fc = probe(c);
      Real fd = out.evaluations < budget ? probe(d) : infeasible;
      for (int it = 0; it < 8 && out.evaluations < budget; ++it) {
        if (fc >= fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - phi * (b - a);
          fc = probe(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + phi * (b - a);
          fd = probe(d);
        }
      }
      if (out.result.value > out.baseline.value) {
        point = out.xs;
        logs[l] = to_log10(point[l]);
      }
    }
  }
  return out;
}

namespace {

template <typename F>
Cell cell(F&& f) {
  try {
    return {f(), {}};
  } catch (const DomainError& e) {
    return {std::nullopt, std::string("out_of_domain: ") + e.what()};
  } catch (const std::exception& e) {
    return {std::nullopt, std::string("error: ") + e.what()};
  }
}

TableRow compute_row(const IharaProfile& profile, const Real& delta, const XsChoice& choice, Bits prec) {
  TableRow row{delta.with_precision(prec), {}, {}, {}, {}, {}, {}, {}};
  const Real gamma = profile.gamma.with_precision(prec);
  row.gv = cell([&] {
    const Real plotkin(mpq_class(static_cast<long>(profile.q - 1), static_cast<long>(profile.q)), prec);
    if (row.delta <= 0 || row.delta >= plotkin) throw DomainError("delta outside (0, (q-1)/q)");
    return gv_bound(profile.q, row.delta);
  });
  row.tvz = cell([&] { return tvz_bound(row.delta, gamma); });
  row.no1 = cell([&] { return no1_bound(profile.q, row.delta, gamma); });
  row.r_lin = cell([&] { return r_lin(profile, row.delta, prec).value; });
  row.r_general = cell([&] {
    if (choice.optimize) {
      OptimizeResult o = optimize_x(profile, row.delta, choice.m, choice.budget, prec);
      row.xs = o.xs;
      return o.result.value;
    }
    row.xs = choice.xs;
    return r_general(BoundProblem(profile, row.delta, choice.xs, prec)).value;
  });
  const std::array<std::pair<const char*, const Cell*>, 5> named = {
      {{"gv", &row.gv}, {"tvz", &row.tvz}, {"no1", &row.no1}, {"r_lin", &row.r_lin}, {"r_general", &row.r_general}}};
  const Real* top = nullptr;
  for (const auto& [name, c] : named) {
    if (c->value && (!top || *c->value > *top)) {
      top = &*c->value;
      row.best = name;
    }
  }
  return row;
}

}  // namespace

std::vector<TableRow> compare_table_serial(const IharaProfile& profile, const std::vector<Real>& deltas,
                                           const XsChoice& xs, Bits prec) {
  std::vector<TableRow> rows;
  rows.reserve(deltas.size());
  for (const Real& d : deltas) rows.push_back(compute_row(profile, d, xs, prec));
  return rows;
}

std::vector<TableRow> compare_table(const IharaProfile& profile, const std::vector<Real>& deltas, const XsChoice& xs,
                                    Bits prec) {
  std::vector<std::optional<TableRow>> slots(deltas.size());
  const long n = static_cast<long>(deltas.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    slots[static_cast<std::size_t>(i)] = compute_row(profile, deltas[static_cast<std::size_t>(i)], xs, prec);
  }
  std::vector<TableRow> rows;
  rows.reserve(slots.size());
  for (auto& s : slots) rows.push_back(std::move(*s));
  return rows;
}

std::string round_trip_decimal(const Real& v) {
  const auto digits = static_cast<int>(mpfr_get_str_ndigits(10, v.precision().value));
  return v.to_scientific(digits, MPFR_RNDN);
}

namespace {

std::string cell_text(const Cell& c, int digits) {
  if (c.value) return c.value->to_string(digits);
  return c.error.rfind("out_of_domain", 0) == 0 ? "out_of_domain" : "error";
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<TableRow>& rows, int digits) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << round_trip_decimal(r.delta) << ',' << cell_text(r.gv, digits) << ',' << cell_text(r.tvz, digits) << ','
        << cell_text(r.no1, digits) << ',' << cell_text(r.r_lin, digits) << ',' << cell_text(r.r_general, digits)
        << ',' << r.best << '\n';
  }
}

nlohmann::json to_json(const TableRow& r, int digits) {
  auto c = [&](const Cell& cl) -> nlohmann::json {
    if (cl.value) return cl.value->to_string(digits);
    return {{"error", cl.error}};
  };
  nlohmann::json xs = nlohmann::json::array();
  for (const Real& x : r.xs) xs.push_back(x.to_string(digits));
  return {{"delta", round_trip_decimal(r.delta)}, {"gv", c(r.gv)},   {"tvz", c(r.tvz)},
          {"no1", c(r.no1)},                      {"r_lin", c(r.r_lin)}, {"r_general", c(r.r_general)},
          {"xs", xs},                             {"best", r.best}};
}

}  // namespace codebounds
