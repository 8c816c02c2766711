#include "codebounds/ffield_divisors.hpp"

#include "codebounds/errors.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace codebounds {

namespace {

using Poly = std::vector<int>;  // low to high, monic

// Remainder of a modulo monic b over F_p.
Poly poly_mod(Poly a, const Poly& b, int p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db && !a.empty()) {
    const int lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) {
        a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
      }
    }
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly monic_from_code(long code, int d, int p) {
  Poly f(static_cast<std::size_t>(d) + 1, 0);
  for (int i = 0; i < d; ++i) {
    f[static_cast<std::size_t>(i)] = static_cast<int>(code % p);
    code /= p;
  }
  f.back() = 1;
  return f;
}

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

mpz_class binom(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

void require_cap(long degree, const FunctionFieldModel& model) {
  if (degree > model.max_degree()) {
    throw InputError("degree " + std::to_string(degree) + " exceeds the model's place cap " +
                     std::to_string(model.max_degree()));
  }
}

// Depth-first enumeration from place `idx` with `remaining` degree left.
void enumerate_from(const FunctionFieldModel& model, std::size_t idx, int remaining, Divisor& current,
                    std::vector<Divisor>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  const auto& places = model.places();
  if (idx >= places.size() || places[idx].degree > remaining) return;
  const int deg = places[idx].degree;
  for (int k = 0; k * deg <= remaining; ++k) {
    Divisor next = current;
    next.add(idx, k);
    enumerate_from(model, idx + 1, remaining - k * deg, next, out);
  }
}

long sum_l_j(const std::vector<long>& js) {
  long s = 0;
  for (std::size_t i = 0; i < js.size(); ++i) s += static_cast<long>(i + 1) * js[i];
  return s;
}

long sum_l1_j(const std::vector<long>& js) {
  long s = 0;
  for (std::size_t i = 0; i < js.size(); ++i) s += static_cast<long>(i + 2) * js[i];
  return s;
}

mpz_class count_u_formula(long r, long t, const std::vector<long>& js, int m, const FunctionFieldModel& model) {
  const long n = model.n();
  const long shift = t - m * n + sum_l_j(js);
  mpz_class out = 1;
  long used = 0;
  for (int l = m; l >= 1; --l) {
    const long jl = js[static_cast<std::size_t>(l - 1)];
    out *= binom(n - used, jl);
    used += jl;
  }
  out *= binom(n - used, shift);
  if (out == 0) return out;
  const long a = r - m * n + sum_l_j(js);
  if (shift < 0 || a < shift) return 0;
  require_cap(a, model);
  return out * exact_support_formula(static_cast<int>(a), static_cast<int>(shift), model);
}

void check_js(const std::vector<long>& js, int m, const char* what) {
  if (m < 1) throw InputError("m must be at least 1");
  if (js.size() != static_cast<std::size_t>(m)) throw InputError(std::string(what) + " must have m entries");
  for (long j : js) {
    if (j < 0) throw InputError(std::string(what) + " entries must be non-negative");
  }
}

// Calls f on every vector in [0, bound]^size, first coordinate fastest.
template <class F>
void for_each_tuple(std::size_t size, const std::vector<long>& bounds, F&& f) {
  std::vector<long> v(size, 0);
  while (true) {
    f(v);
    std::size_t i = 0;
    while (i < size && v[i] == bounds[i]) v[i++] = 0;
    if (i == size) return;
    ++v[i];
  }
}

// j_l upper bounds of Condition 2, l = 1..m.
std::vector<long> condition2_bounds(const std::vector<long>& xs) {
  const std::size_t m = xs.size();
  std::vector<long> out(m);
  long tail = 0;
  for (std::size_t l = m; l-- > 0;) {
    out[l] = 2 * xs[l] + tail;
    tail += xs[l];
  }
  return out;
}

long condition3_bound(const std::vector<long>& xs) { return 2 * sum_l1_j(xs); }

}  // namespace

std::string Place::to_string() const {
  if (kind == Kind::infinite) return "inf";
  std::string out;
  for (std::size_t i = poly.size(); i-- > 0;) {
    const int c = poly[i];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c);
    out += 'x';
    if (i > 1) out += '^' + std::to_string(i);
  }
  return out;
}

FunctionFieldModel::FunctionFieldModel(int q, int max_degree, std::vector<Place> places)
    : q_(q), max_degree_(max_degree), places_(std::move(places)) {}

std::size_t FunctionFieldModel::count_of_degree(int d) const {
  return static_cast<std::size_t>(
      std::count_if(places_.begin(), places_.end(), [d](const Place& p) { return p.degree == d; }));
}

mpz_class necklace_count(int q, int d) {
  if (d < 1) throw InputError("degree must be positive");
  mpz_class sum = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e != 0) continue;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(d / e));
    sum += mobius(e) * p;
  }
  return sum / d;
}

mpz_class divisor_count(int q, int d) {
  if (d < 0) return 0;
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(d + 1));
  return (p - 1) / (q - 1);
}

FunctionFieldModel enumerate_places(int q, int max_degree) {
  if (q != 2 && q != 3 && q != 5) throw InputError("supported fields are F_2, F_3 and F_5, got q = " + std::to_string(q));
  if (max_degree < 1 || max_degree > 8) throw InputError("max_degree must be in [1, 8]");

  std::vector<Place> places;
  places.push_back({Place::Kind::infinite, 1, {}});
  std::vector<Poly> irreducible;
  for (int d = 1; d <= max_degree; ++d) {
    long total = 1;
    for (int i = 0; i < d; ++i) total *= q;
    const std::size_t before = places.size();
    for (long code = 0; code < total; ++code) {
      Poly f = monic_from_code(code, d, q);
      bool irreducible_f = true;
      for (const Poly& g : irreducible) {
        if (2 * (static_cast<int>(g.size()) - 1) > d) break;
        if (poly_mod(f, g, q).empty()) {
          irreducible_f = false;
          break;
        }
      }
      if (!irreducible_f) continue;
      irreducible.push_back(f);
      places.push_back({Place::Kind::finite, d, std::move(f)});
    }
    if (mpz_class(static_cast<unsigned long>(places.size() - before)) != necklace_count(q, d)) {
      throw std::logic_error("place count disagrees with the necklace formula");
    }
  }
  return FunctionFieldModel(q, max_degree, std::move(places));
}

Divisor::Divisor(std::map<std::size_t, int> support) {
  for (auto [p, k] : support) add(p, k);
}

Divisor& Divisor::add(std::size_t place, int mult) {
  if (mult < 0) throw InputError("multiplicities must be non-negative");
  if (mult > 0) support_[place] += mult;
  return *this;
}

int Divisor::multiplicity(std::size_t place) const {
  auto it = support_.find(place);
  return it == support_.end() ? 0 : it->second;
}

long Divisor::degree(const FunctionFieldModel& model) const {
  long d = 0;
  for (auto [p, k] : support_) d += static_cast<long>(k) * model.place(p).degree;
  return d;
}

std::string Divisor::to_string(const FunctionFieldModel& model) const {
  if (support_.empty()) return "0";
  std::string out;
  for (auto [p, k] : support_) {
    if (!out.empty()) out += " + ";
    if (k != 1) out += std::to_string(k) + "*";
    out += "(" + model.place(p).to_string() + ")";
  }
  return out;
}

Divisor truncated_divisor(const Divisor& d, int m, const FunctionFieldModel& model) {
  if (m < 1) throw InputError("m must be at least 1");
  Divisor out;
  for (auto [p, k] : d.support()) {
    if (model.is_rational(p)) out.add(p, std::min(m + 1, k));
  }
  return out;
}

JProfile j_profile(const Divisor& d, int m, const FunctionFieldModel& model) {
  if (m < 1) throw InputError("m must be at least 1");
  JProfile out;
  out.j.assign(static_cast<std::size_t>(m) + 1, 0);
  for (std::size_t i = 0; i < static_cast<std::size_t>(model.n()); ++i) {
    const int v = d.multiplicity(i);
    if (v <= m) ++out.j[static_cast<std::size_t>(m - v)];
  }
  for (int l = 1; l <= m; ++l) out.weighted += (l + 1) * out.j[static_cast<std::size_t>(l)];
  return out;
}

bool degree_identity_check(const Divisor& d, int m, const FunctionFieldModel& model) {
  const JProfile jp = j_profile(d, m, model);
  long lhs = truncated_divisor(d, m, model).degree(model);
  for (int l = 0; l <= m; ++l) lhs += (l + 1) * jp.j[static_cast<std::size_t>(l)];
  return lhs == static_cast<long>(m + 1) * model.n();
}

bool vm_member(const Divisor& d, long r, long s, const std::vector<long>& xs, int m,
               const FunctionFieldModel& model) {
  check_js(xs, m, "X");
  if (d.degree(model) != r) return false;
  if (truncated_divisor(d, m, model).degree(model) < s) return false;
  const JProfile jp = j_profile(d, m, model);
  const std::vector<long> bounds = condition2_bounds(xs);
  for (int l = 1; l <= m; ++l) {
    if (jp.j[static_cast<std::size_t>(l)] > bounds[static_cast<std::size_t>(l - 1)]) return false;
  }
  return jp.weighted <= condition3_bound(xs);
}

std::vector<Divisor> enumerate_divisors_serial(const FunctionFieldModel& model, int degree) {
  if (degree < 0) return {};
  require_cap(degree, model);
  std::vector<Divisor> out;
  Divisor empty;
  enumerate_from(model, 0, degree, empty, out);
  return out;
}

std::vector<Divisor> enumerate_divisors_parallel(const FunctionFieldModel& model, int degree) {
  if (degree < 0) return {};
  require_cap(degree, model);
  // Shard on the multiplicities of the first two places (both rational).
  std::vector<std::pair<int, int>> tasks;
  for (int a = 0; a <= degree; ++a) {
    for (int b = 0; a + b <= degree; ++b) tasks.emplace_back(a, b);
  }
  std::vector<std::vector<Divisor>> parts(tasks.size());
  const long count = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    const auto [a, b] = tasks[static_cast<std::size_t>(i)];
    Divisor start;
    start.add(0, a).add(1, b);
    enumerate_from(model, 2, degree - a - b, start, parts[static_cast<std::size_t>(i)]);
  }
  std::vector<Divisor> out;
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
  return out;
}

long count_exact_support(int a, int b, const FunctionFieldModel& model, std::uint64_t seed) {
  const int n = model.n();
  if (b < 0 || b > n || a < b) return 0;
  require_cap(a, model);
  const std::vector<Divisor> all = enumerate_divisors_serial(model, a);

  std::vector<std::size_t> rational(static_cast<std::size_t>(n));
  std::iota(rational.begin(), rational.end(), 0);
  std::mt19937_64 rng(seed);
  long first = -1;
  for (int trial = 0; trial < 3; ++trial) {
    if (trial > 0) std::shuffle(rational.begin(), rational.end(), rng);
    const std::set<std::size_t> chosen(rational.begin(), rational.begin() + b);
    long c = 0;
    for (const Divisor& d : all) {
      bool match = true;
      for (std::size_t i = 0; i < static_cast<std::size_t>(n) && match; ++i) {
        match = (d.multiplicity(i) > 0) == (chosen.count(i) > 0);
      }
      if (match) ++c;
    }
    if (first < 0) {
      first = c;
    } else if (c != first) {
      throw std::logic_error("C_{a,b} depends on the chosen rational places");
    }
  }
  return first;
}

mpz_class exact_support_formula(int a, int b, const FunctionFieldModel& model) {
  if (b < 0 || b > model.n() || a < b) return 0;
  require_cap(a, model);
  // off[d]: divisors of degree d supported on places of degree >= 2.
  std::vector<mpz_class> off(static_cast<std::size_t>(a) + 1, 0);
  off[0] = 1;
  for (int e = 2; e <= a; ++e) {
    const long places = static_cast<long>(model.count_of_degree(e));
    std::vector<mpz_class> next(off.size(), 0);
    for (int d = 0; d <= a; ++d) {
      for (int k = 0; d + k * e <= a; ++k) {
        next[static_cast<std::size_t>(d + k * e)] += off[static_cast<std::size_t>(d)] * binom(places + k - 1, k);
      }
    }
    off = std::move(next);
  }
  if (b == 0) return off[static_cast<std::size_t>(a)];
  mpz_class out = 0;
  for (int k = b; k <= a; ++k) out += binom(k - 1, b - 1) * off[static_cast<std::size_t>(a - k)];
  return out;
}

CountU count_u(long r, long t, const std::vector<long>& js, int m, const FunctionFieldModel& model) {
  check_js(js, m, "j");
  if (t < 0 || r < t) throw InputError("count_u needs r >= t >= 0");
  require_cap(r, model);
  CountU out;
  out.formula = count_u_formula(r, t, js, m, model);

  const long n = model.n();
  const long lo = m * n - sum_l_j(js);
  const long hi = (m + 1) * n - sum_l1_j(js);
  out.nonempty_predicted = lo <= t && t <= hi && !(t == lo && r > t && r - t < 2);

  for (const Divisor& d : enumerate_divisors_serial(model, static_cast<int>(r))) {
    if (truncated_divisor(d, m, model).degree(model) != t) continue;
    const JProfile jp = j_profile(d, m, model);
    if (std::equal(js.begin(), js.end(), jp.j.begin() + 1)) ++out.brute;
  }
  return out;
}

CountVm count_vm(long r, long s, const std::vector<long>& xs, int m, const FunctionFieldModel& model) {
  check_js(xs, m, "X");
  if (r < 0 || s < 0) throw InputError("count_vm needs r, s >= 0");
  require_cap(r, model);
  CountVm out;
  const long n = model.n();
  const std::vector<long> jb = condition2_bounds(xs);
  const long jcap = condition3_bound(xs);

  // Pieces of the disjoint union, keyed by (j_1..j_m, t).
  std::map<std::vector<long>, mpz_class> pieces;
  for_each_tuple(static_cast<std::size_t>(m), jb, [&](const std::vector<long>& js) {
    if (sum_l1_j(js) > jcap) return;
    const long t_lo = std::max(s, m * n - sum_l_j(js));
    const long t_hi = std::min(r, (m + 1) * n - sum_l1_j(js));
    for (long t = t_lo; t <= t_hi; ++t) {
      mpz_class f = count_u_formula(r, t, js, m, model);
      out.sum_formula += f;
      std::vector<long> key = js;
      key.push_back(t);
      pieces.emplace(std::move(key), std::move(f));
    }
  });

  std::map<std::vector<long>, long> tagged;
  for (const Divisor& d : enumerate_divisors_serial(model, static_cast<int>(r))) {
    if (!vm_member(d, r, s, xs, m, model)) continue;
    ++out.brute;
    const JProfile jp = j_profile(d, m, model);
    std::vector<long> key(jp.j.begin() + 1, jp.j.end());
    key.push_back(truncated_divisor(d, m, model).degree(model));
    if (pieces.count(key) == 0) out.disjoint_union_ok = false;
    ++tagged[key];
  }
  for (const auto& [key, f] : pieces) {
    auto it = tagged.find(key);
    if (f != (it == tagged.end() ? 0 : it->second)) out.disjoint_union_ok = false;
  }
  return out;
}

nlohmann::json verify_divisor_grid(const DivisorGrid& grid) {
  const FunctionFieldModel model = enumerate_places(grid.q, std::max(grid.max_r, 1));
  const int m = grid.m;
  nlohmann::json u_mismatch = nlohmann::json::array();
  nlohmann::json empty_mismatch = nlohmann::json::array();
  nlohmann::json vm_mismatch = nlohmann::json::array();
  long u_cases = 0;
  long vm_cases = 0;
  long identity_failures = 0;
  long divisors = 0;
  constexpr std::size_t kMaxListed = 20;

  const std::vector<long> bounds(static_cast<std::size_t>(m), grid.max_j);
  for (int r = 0; r <= grid.max_r; ++r) {
    for (const Divisor& d : enumerate_divisors_serial(model, r)) {
      ++divisors;
      if (!degree_identity_check(d, m, model)) ++identity_failures;
    }
    for (long t = 0; t <= r; ++t) {
      for_each_tuple(static_cast<std::size_t>(m), bounds, [&](const std::vector<long>& js) {
        ++u_cases;
        const CountU c = count_u(r, t, js, m, model);
        const nlohmann::json where = {{"r", r}, {"t", t}, {"j", js}};
        if (c.formula != c.brute && u_mismatch.size() < kMaxListed) {
          nlohmann::json e = where;
          e["formula"] = c.formula.get_str();
          e["brute"] = c.brute;
          u_mismatch.push_back(e);
        }
        if (c.nonempty_predicted != (c.brute > 0) && empty_mismatch.size() < kMaxListed) {
          nlohmann::json e = where;
          e["predicted"] = c.nonempty_predicted;
          e["brute"] = c.brute;
          empty_mismatch.push_back(e);
        }
      });
    }
    for (long s = 0; s <= r + 1; ++s) {
      for_each_tuple(static_cast<std::size_t>(m), bounds, [&](const std::vector<long>& xs) {
        ++vm_cases;
        const CountVm c = count_vm(r, s, xs, m, model);
        if ((c.sum_formula != c.brute || !c.disjoint_union_ok) && vm_mismatch.size() < kMaxListed) {
          vm_mismatch.push_back({{"r", r},
                                 {"s", s},
                                 {"X", xs},
                                 {"sum_formula", c.sum_formula.get_str()},
                                 {"brute", c.brute},
                                 {"disjoint_union_ok", c.disjoint_union_ok}});
        }
      });
    }
  }
  const bool ok = u_mismatch.empty() && empty_mismatch.empty() && vm_mismatch.empty() && identity_failures == 0;
  return {{"q", grid.q},
          {"m", m},
          {"n", model.n()},
          {"max_r", grid.max_r},
          {"max_j", grid.max_j},
          {"degree_identity", {{"divisors", divisors}, {"failures", identity_failures}}},
          {"count_u", {{"cases", u_cases}, {"mismatches", u_mismatch}, {"emptiness_mismatches", empty_mismatch}}},
          {"count_vm", {{"cases", vm_cases}, {"mismatches", vm_mismatch}}},
          {"ok", ok}};
}

}  // namespace codebounds
