#pragma once

#include "codebounds/precision_real.hpp"

#include <json.hpp>

#include <cstdint>

namespace codebounds {

/// Randomized checks of the surface and the I-function:
///   gradient vs central differences (step 2^-(p/3), tolerance 2^-(p/4)),
///   strict monotonicity of I in sigma, corner dominance, and agreement of
///   the telescoped and simplified forms of S.
/// Parameters of the monotonicity and dominance checks are those of the
/// q = 64 reference example.
nlohmann::json verify_surface(std::uint64_t seed, Bits precision);

}  // namespace codebounds
