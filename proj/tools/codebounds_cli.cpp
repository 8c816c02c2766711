#include "codebounds/classic_bounds.hpp"
#include "codebounds/errors.hpp"
#include "codebounds/ffield_divisors.hpp"
#include "codebounds/rate_bounds.hpp"
#include "codebounds/rational.hpp"
#include "codebounds/reference_examples.hpp"
#include "codebounds/surface_checks.hpp"
#include "codebounds/vector_index.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace codebounds;

namespace {

enum Exit { kOk = 0, kUsage = 1, kDomain = 2, kFailed = 3 };

struct Config {
  long precision_bits = 768;
  int digits = 30;
  std::string format = "table";
  std::uint64_t seed = 0;
};

struct ProfileArgs {
  unsigned long q = 0;
  std::string gamma;
  std::vector<std::string> gamma_l;
};

Bits bits(const Config& c) { return Bits{c.precision_bits}; }

IharaProfile make_profile(const ProfileArgs& a, Bits prec) {
  if (!is_prime_power(a.q)) throw InputError("--q must be a prime power, got " + std::to_string(a.q));
  Real gamma(prec);
  if (!a.gamma.empty()) {
    gamma = parse_real(a.gamma, prec);
  } else {
    const IharaLower lower = ihara_lower(a.q);
    if (!lower.known()) throw InputError("q = " + std::to_string(a.q) + " is neither a square nor a cube; pass --gamma");
    gamma = lower.value(prec);
  }
  std::map<int, Real> gl;
  for (const std::string& item : a.gamma_l) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("--gamma-l expects l=value, got '" + item + "'");
    int l = 0;
    try {
      l = std::stoi(item.substr(0, eq));
    } catch (const std::exception&) {
      throw InputError("--gamma-l degree must be an integer, got '" + item + "'");
    }
    if (l < 1) throw InputError("--gamma-l degree must be >= 1");
    gl.insert_or_assign(l, parse_real(item.substr(eq + 1), prec));
  }
  return IharaProfile(a.q, gamma, gl);
}

std::vector<Real> parse_list(const std::string& text, Bits prec) {
  std::vector<Real> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item, prec));
  if (out.empty()) throw InputError("empty --x list");
  return out;
}

void print_pairs(const std::vector<std::pair<std::string, std::string>>& kv, const Config& c) {
  if (c.format == "json") {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : kv) j[k] = v;
    std::cout << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    for (std::size_t i = 0; i < kv.size(); ++i) std::cout << (i ? "," : "") << kv[i].first;
    std::cout << "\n";
    for (std::size_t i = 0; i < kv.size(); ++i) std::cout << (i ? "," : "") << kv[i].second;
    std::cout << "\n";
  } else {
    std::size_t w = 0;
    for (const auto& [k, v] : kv) w = std::max(w, k.size());
    for (const auto& [k, v] : kv) std::cout << std::left << std::setw(static_cast<int>(w) + 2) << k << v << "\n";
  }
}

void add_diagnostics(std::vector<std::pair<std::string, std::string>>& kv, const BoundResult& r, const Config& c,
                     const std::string& prefix) {
  const nlohmann::json d = r.psi_diagnostics.to_json(c.digits);
  kv.emplace_back(prefix + "psi", r.psi.to_string(c.digits));
  for (const auto& [k, v] : d.items()) {
    if (k == "conditions_root") continue;
    kv.emplace_back(prefix + k, v.is_string() ? v.get<std::string>() : v.dump());
  }
}

int cmd_bound(const std::string& kind, const ProfileArgs& pa, const std::string& delta_text, const std::string& x_text,
              const Config& c) {
  const Bits prec = bits(c);
  if (delta_text.empty()) throw InputError("--delta is required");
  const Real delta = parse_real(delta_text, prec);
  std::vector<std::pair<std::string, std::string>> kv{{"kind", kind}, {"q", std::to_string(pa.q)},
                                                      {"delta", delta.to_string(c.digits, MPFR_RNDN)}};
  if (kind == "gv") {
    if (!is_prime_power(pa.q)) throw InputError("--q must be a prime power");
    const Real plotkin(mpq_class(static_cast<long>(pa.q - 1), static_cast<long>(pa.q)), prec);
    if (delta <= 0 || delta >= plotkin) throw DomainError("gv needs 0 < delta < (q-1)/q");
    kv.emplace_back("value", gv_bound(pa.q, delta).to_string(c.digits));
    print_pairs(kv, c);
    return kOk;
  }
  const IharaProfile profile = make_profile(pa, prec);
  kv.emplace_back("gamma", profile.gamma.to_string(c.digits));
  if (kind == "tvz" || kind == "no1") {
    const Real v = kind == "tvz" ? tvz_bound(delta, profile.gamma) : no1_bound(pa.q, delta, profile.gamma);
    kv.emplace_back("value", v.to_string(c.digits));
    print_pairs(kv, c);
    return kOk;
  }
  if (kind == "lin") {
    const BoundResult r = r_lin(profile, delta, prec);
    kv.emplace_back("value", r.value.to_string(c.digits));
    add_diagnostics(kv, r, c, "");
    print_pairs(kv, c);
    return kOk;
  }
  if (kind == "new") {
    if (x_text.empty()) throw InputError("bound new needs --x");
    const std::vector<Real> xs = parse_list(x_text, prec);
    const BoundResult lin = r_lin(profile, delta, prec);
    const BoundResult gen = r_general(BoundProblem(profile, delta, xs, prec));
    kv.emplace_back("value", gen.value.to_string(c.digits));
    kv.emplace_back("r_lin", lin.value.to_string(c.digits));
    kv.emplace_back("gain_over_r_lin", (gen.value - lin.value).to_scientific(c.digits));
    add_diagnostics(kv, gen, c, "");
    print_pairs(kv, c);
    return kOk;
  }
  throw InputError("unknown bound kind '" + kind + "' (gv, tvz, no1, lin, new)");
}

int cmd_reproduce(const std::string& name, const Config& c) {
  const auto ex = find_reference_example(name);
  if (!ex) throw InputError("unknown example '" + name + "' (q64|7.1, q49|7.2, q2097152|7.3)");
  const ReproduceReport report = reproduce(*ex, bits(c));
  if (c.format == "json") {
    std::cout << report.to_json(c.digits).dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < report.cases.size(); ++i) {
      const auto& rc = ex->cases[i];
      const auto& r = report.cases[i];
      std::cout << "case " << i + 1 << "  q=" << ex->q << "  delta=" << rc.delta << "\n"
                << "  r_lin      " << r.r_lin.to_string(c.digits) << "  (printed " << rc.r_lin << ", "
                << r.lin_method << ")\n"
                << "  r_general  " << r.r_general.to_string(c.digits) << "  (" << r.general_method << ")\n"
                << "  gain       " << r.gain.to_scientific(10) << "  (required >= " << rc.min_gain << ")\n"
                << "  rival      " << rc.rival << "  (margin required >= " << rc.rival_margin << ")\n";
      for (const auto& k : r.checks) {
        std::cout << "  " << (k.pass ? "PASS " : "FAIL ") << std::left << std::setw(18) << k.name << k.detail << "\n";
      }
      std::cout << "  time       " << std::fixed << std::setprecision(2) << r.seconds << " s\n";
      std::cout.unsetf(std::ios::floatfield);
    }
    std::cout << (report.pass() ? "PASS" : "FAIL") << " " << report.example << " at " << report.precision_bits
              << " bits\n";
  }
  return report.pass() ? kOk : kFailed;
}

int cmd_scan(const ProfileArgs& pa, const std::string& from, const std::string& to, int steps, std::size_t m,
             const std::string& x_text, bool optimize, int budget, const Config& c) {
  const Bits prec = bits(c);
  const IharaProfile profile = make_profile(pa, prec);
  if (steps < 1) throw InputError("--steps must be >= 1");
  const mpq_class lo = RationalInput::parse(from).value();
  const mpq_class hi = RationalInput::parse(to).value();
  if (lo <= 0 || hi >= 1 || lo > hi || (steps > 1 && lo == hi)) {
    throw DomainError("scan needs 0 < from < to < 1");
  }
  // Grid points are exact rationals, rounded once.
  std::vector<Real> deltas;
  for (int i = 0; i < steps; ++i) {
    const mpq_class step = steps == 1 ? mpq_class(0) : mpq_class(i, steps - 1);
    deltas.emplace_back(mpq_class(lo + (hi - lo) * step), prec);
  }
  XsChoice choice;
  choice.optimize = optimize;
  choice.budget = budget;
  choice.m = m;
  if (!optimize) choice.xs = x_text.empty() ? std::vector<Real>(m, Real(prec)) : parse_list(x_text, prec);
  const std::vector<TableRow> rows = compare_table(profile, deltas, choice, prec);
  if (c.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back(to_json(r, c.digits));
    std::cout << arr.dump(2) << "\n";
  } else if (c.format == "csv") {
    write_csv(std::cout, rows, c.digits);
  } else {
    const int w = c.digits + 6;
    for (const char* h : {"delta", "gv", "tvz", "no1", "r_lin", "r_general", "best"}) {
      std::cout << std::left << std::setw(w) << h;
    }
    std::cout << "\n";
    auto cell = [&](const Cell& v) { return v.value ? v.value->to_string(c.digits, MPFR_RNDN) : "error: " + v.error; };
    for (const auto& r : rows) {
      std::cout << std::left << std::setw(w) << r.delta.to_string(c.digits, MPFR_RNDN);
      for (const Cell* v : {&r.gv, &r.tvz, &r.no1, &r.r_lin, &r.r_general}) std::cout << std::setw(w) << cell(*v);
      std::cout << r.best << "\n";
    }
  }
  return kOk;
}

int cmd_verify(const std::string& suite, const Config& c) {
  if (suite != "combinatorics" && suite != "vectors" && suite != "surface" && suite != "all") {
    throw InputError("unknown suite '" + suite + "' (combinatorics, vectors, surface, all)");
  }
  nlohmann::json out;
  bool ok = true;
  auto line = [&](const std::string& name, bool pass, const std::string& detail) {
    if (c.format != "json") std::cout << (pass ? "PASS " : "FAIL ") << std::left << std::setw(32) << name << detail << "\n";
  };
  if (suite == "combinatorics" || suite == "all") {
    const std::vector<DivisorGrid> grids{{2, 1, 5, 3}, {2, 2, 5, 3}, {3, 1, 4, 3}, {3, 2, 4, 3}, {2, 3, 4, 2}};
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& g : grids) {
      const nlohmann::json r = verify_divisor_grid(g);
      arr.push_back(r);
      const bool pass = r["ok"].get<bool>();
      ok = ok && pass;
      std::ostringstream name;
      name << "divisors q=" << g.q << " m=" << g.m << " r<=" << g.max_r;
      std::ostringstream detail;
      detail << r["count_u"]["cases"] << " count_u, " << r["count_vm"]["cases"] << " count_vm, "
             << r["degree_identity"]["divisors"] << " divisors";
      line(name.str(), pass, detail.str());
      if (!pass && c.format != "json") std::cout << r.dump(2) << "\n";
    }
    out["combinatorics"] = arr;
  }
  if (suite == "vectors" || suite == "all") {
    const nlohmann::json r = verify_vector_index(c.seed);
    out["vectors"] = r;
    for (const char* k : {"index_set_lemmas", "m_set", "zero_divisor_profile", "weight_inequality", "covering"}) {
      const bool pass = r[k]["first_counterexample"].is_null();
      std::string detail = r[k].contains("cases") ? std::to_string(r[k]["cases"].get<long>()) + " cases" : "";
      line(std::string("vectors ") + k, pass, detail);
      if (!pass && c.format != "json") std::cout << r[k].dump(2) << "\n";
    }
    ok = ok && r["ok"].get<bool>();
  }
  if (suite == "surface" || suite == "all") {
    const nlohmann::json r = verify_surface(c.seed, bits(c));
    out["surface"] = r;
    for (const char* k : {"gradient", "i_monotone", "corner_dominance", "simplified_form"}) {
      const bool pass = r[k]["first_counterexample"].is_null();
      line(std::string("surface ") + k, pass, "");
      if (!pass && c.format != "json") std::cout << r[k].dump(2) << "\n";
    }
    ok = ok && r["ok"].get<bool>();
  }
  out["ok"] = ok;
  if (c.format == "json") std::cout << out.dump(2) << "\n";
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic rate bounds for q-ary codes and the divisor-counting oracles behind them"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--precision-bits", cfg.precision_bits, "working precision in bits")->check(CLI::Range(128L, 1L << 20));
  app.add_option("--digits", cfg.digits, "decimal digits to print")->check(CLI::Range(1, 10000));
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--seed", cfg.seed, "seed for randomized suites");
  app.fallthrough();

  ProfileArgs pa;
  std::string delta, xs, from, to, kind, example, suite;
  int steps = 1;
  int budget = 50;
  std::size_t m = 1;
  bool optimize = false;

  auto add_profile = [&](CLI::App* sub) {
    sub->add_option("--q", pa.q, "field size (prime power)")->required();
    sub->add_option("--gamma", pa.gamma, "gamma; defaults to the built-in A(q) lower bound");
    sub->add_option("--gamma-l", pa.gamma_l, "degree-l ratio as l=value (repeatable)");
  };

  CLI::App* bound = app.add_subcommand("bound", "evaluate one bound");
  bound->add_option("kind", kind, "gv | tvz | no1 | lin | new")->required();
  add_profile(bound);
  bound->add_option("--delta", delta, "relative distance (fractions allowed)")->required();
  bound->add_option("--x", xs, "comma-separated x_1..x_m for 'new'");

  CLI::App* repro = app.add_subcommand("reproduce", "recompute a published example and check it");
  repro->add_option("example", example, "q64 | q49 | q2097152 (aliases 7.1, 7.2, 7.3)")->required();

  CLI::App* scan = app.add_subcommand("scan", "sweep delta and tabulate all bounds");
  add_profile(scan);
  scan->add_option("--from", from, "first delta")->required();
  scan->add_option("--to", to, "last delta")->required();
  scan->add_option("--steps", steps, "number of rows");
  scan->add_option("--m", m, "x-vector length")->check(CLI::Range(1, 16));
  scan->add_option("--x", xs, "comma-separated x_1..x_m shared by all rows");
  scan->add_flag("--optimize", optimize, "optimize xs per row");
  scan->add_option("--budget", budget, "evaluations per row when optimizing");

  CLI::App* verify = app.add_subcommand("verify", "run the oracle suites");
  verify->add_option("suite", suite, "combinatorics | vectors | surface | all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (bound->parsed()) return cmd_bound(kind, pa, delta, xs, cfg);
    if (repro->parsed()) return cmd_reproduce(example, cfg);
    if (scan->parsed()) return cmd_scan(pa, from, to, steps, m, xs, optimize, budget, cfg);
    if (verify->parsed()) return cmd_verify(suite, cfg);
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
