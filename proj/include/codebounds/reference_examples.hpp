#pragma once

#include "codebounds/precision_real.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace codebounds {

/// One published delta with its x-vector and printed comparison constants.
struct ReferenceCase {
  std::string delta;                 // exact fraction
  std::vector<std::string> xs;       // decimal literals
  std::string r_lin;                 // printed, truncated decimal
  std::string min_gain;              // r_general - r_lin >= min_gain
  std::string rival;                 // printed rival-bound constant
  std::string rival_margin;          // r_lin - rival >= rival_margin
};

struct ReferenceExample {
  std::string name;                  // "q64", "q49", "q2097152"
  std::vector<std::string> aliases;  // "7.1", ...
  unsigned long q;
  std::string gamma;                 // exact rational literal
  std::vector<ReferenceCase> cases;
};

const std::vector<ReferenceExample>& reference_examples();
/// Lookup by name or alias.
std::optional<ReferenceExample> find_reference_example(const std::string& key);

struct ReproduceCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ReproduceCaseResult {
  Real delta, r_lin, r_general, gain;
  std::string lin_method, general_method;
  std::vector<ReproduceCheck> checks;
  double seconds = 0;
  [[nodiscard]] bool pass() const;
};

struct ReproduceReport {
  std::string example;
  long precision_bits = 0;
  std::vector<ReproduceCaseResult> cases;
  [[nodiscard]] bool pass() const;
  [[nodiscard]] nlohmann::json to_json(int digits) const;
};

/// Smallest difference from `reference` that `precision` bits can resolve:
/// 2^-(precision - 32) * max(|reference|, 1).
Real resolution_floor(const Real& reference, Bits precision);

/// Runs both deltas of an example: r_lin against the printed digits (first
/// 18 decimals, truncated), the gain against its threshold, the rival margin,
/// and the precision guard on the gain.
ReproduceReport reproduce(const ReferenceExample& example, Bits precision);

}  // namespace codebounds
