#include "codebounds/reference_examples.hpp"

#include "codebounds/rate_bounds.hpp"
#include "codebounds/rational.hpp"

#include <chrono>

namespace codebounds {

const std::vector<ReferenceExample>& reference_examples() {
  static const std::vector<ReferenceExample> examples = {
      {"q64",
       {"7.1"},
       64,
       "7",
       {{"13763868443250238929521503984833381597731412559044/46065097831342932365531985486767649347321318605709",
         {"3.41e-16", "1.0634e-23", "1.93e-31"},
         "0.55835395724081743804",
         "2.711029e-17",
         "0.55835371587781529071",
         "2.4136300214732e-7"},
        {"32301229388092693436010481501934267749589906046665/46065097831342932365531985486767649347321318605709",
         {"3.89e-18", "1.98e-26", "5.87e-35"},
         "0.15593754394482448829",
         "2.592642e-19",
         "0.15593709640785805503",
         "4.4753696643325e-7"}}},
      {"q49",
       {"7.2"},
       49,
       "6",
       {{"7334559589562321721169749749908497945081695123431/18755194537338788993696079784908084949457099261873",
         {"1.93e-13", "1.53e-19", "7.08e-26"},
         "0.44226758374884970747",
         "1.857062e-14",
         "0.44226734872224546020",
         "2.3502660424726e-7"},
        {"11420634947776467272526330034999587004375404138442/18755194537338788993696079784908084949457099261873",
         {"5.86e-14", "3.207e-20", "1.02e-26"},
         "0.22440401150099750683",
         "5.258306e-15",
         "0.22440368700019503856",
         "3.2450080246826e-7"}}},
      {"q2097152",
       {"7.3"},
       2097152,
       "32766/130",
       {{"1034323484865452473463726110309814032498446010098/99621193732964014413326435515634059733734238550355",
         {"6.29e-65", "7.09e-97"},
         "0.98564990803085654673",
         "1.261672e-66",
         "0.98564990803085654665",
         "7e-20"},
        {"98586870248098561939862709405324245701235792540257/99621193732964014413326435515634059733734238550355",
         {"6.5e-86", "2.4e-127"},
         "0.00641503733934427410",
         "9.103449e-88",
         "0.00641503733934427385",
         "2.4e-19"}}},
  };
  return examples;
}

std::optional<ReferenceExample> find_reference_example(const std::string& key) {
  for (const ReferenceExample& e : reference_examples()) {
    if (e.name == key) return e;
    for (const std::string& a : e.aliases) {
      if (a == key) return e;
    }
  }
  return std::nullopt;
}

bool ReproduceCaseResult::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

bool ReproduceReport::pass() const {
  for (const auto& c : cases) {
    if (!c.pass()) return false;
  }
  return !cases.empty();
}

nlohmann::json ReproduceReport::to_json(int digits) const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : cases) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& k : c.checks) checks.push_back({{"name", k.name}, {"pass", k.pass}, {"detail", k.detail}});
    rows.push_back({{"delta", c.delta.to_string(digits)},
                    {"r_lin", c.r_lin.to_string(digits)},
                    {"r_general", c.r_general.to_string(digits)},
                    {"gain", c.gain.to_scientific(digits)},
                    {"lin_method", c.lin_method},
                    {"general_method", c.general_method},
                    {"seconds", c.seconds},
                    {"checks", checks},
                    {"pass", c.pass()}});
  }
  return {{"example", example}, {"precision_bits", precision_bits}, {"cases", rows}, {"pass", pass()}};
}

Real resolution_floor(const Real& reference, Bits precision) {
  const Real one(1L, precision);
  return Real::pow2(32 - precision.value, precision) * max(abs(reference.with_precision(precision)), one);
}

ReproduceReport reproduce(const ReferenceExample& example, Bits precision) {
  ReproduceReport report;
  report.example = example.name;
  report.precision_bits = precision.value;
  const IharaProfile profile(example.q, parse_real(example.gamma, precision));

  for (const ReferenceCase& rc : example.cases) {
    const auto t0 = std::chrono::steady_clock::now();
    ReproduceCaseResult out;
    out.delta = parse_real(rc.delta, precision);
    std::vector<Real> xs;
    for (const auto& x : rc.xs) xs.push_back(parse_real(x, precision));

    const BoundResult lin = r_lin(profile, out.delta, precision);
    const BoundResult gen = r_general(BoundProblem(profile, out.delta, xs, precision));
    out.r_lin = lin.value;
    out.r_general = gen.value;
    out.gain = gen.value - lin.value;
    out.lin_method = to_string(lin.psi_diagnostics.method);
    out.general_method = to_string(gen.psi_diagnostics.method);

    const std::string printed18 = rc.r_lin.substr(0, 2 + 18);
    const std::string computed18 = out.r_lin.to_fixed(18);
    out.checks.push_back({"r_lin_18_digits", computed18 == printed18, computed18 + " vs " + printed18});

    const Real floor = resolution_floor(out.r_lin, precision);
    const bool resolvable = out.gain > floor;
    out.checks.push_back({"precision_guard", resolvable,
                          "gain " + out.gain.to_scientific(8) + ", resolution " + floor.to_scientific(3)});

    const Real min_gain = parse_real(rc.min_gain, precision);
    out.checks.push_back({"gain", resolvable && out.gain >= min_gain,
                          out.gain.to_scientific(8) + " >= " + rc.min_gain});

    const Real margin = out.r_lin - parse_real(rc.rival, precision);
    const Real min_margin = parse_real(rc.rival_margin, precision);
    out.checks.push_back({"rival_margin", margin >= min_margin, margin.to_scientific(8) + " >= " + rc.rival_margin});

    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.cases.push_back(std::move(out));
  }
  return report;
}

}  // namespace codebounds
