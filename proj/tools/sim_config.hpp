#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "predpower/errors.hpp"
#include "predpower/montecarlo.hpp"

namespace predpower::cli {

/// Malformed simulation config. The message names the source and the field.
class ConfigError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Simulation sweep description, read from JSON:
///
///   {
///     "seed": 7,                      optional
///     "replications": 200000,         default for every experiment
///     "experiments": [
///       {"kind": "single", "transform": "arcsin", "runs": 400, "p": [0.1, 0.5]},
///       {"kind": "two-arm", "p_left": 0.3, "p_right": 0.6,
///        "left_runs": 400, "right_runs": 400, "sign": "minus", "replications": 1000}
///     ]
///   }
///
/// A list-valued "p" expands into one config per value. Expanded config k
/// gets seed base + k, where base is `seed_override`, else the file's "seed",
/// else `fallback_seed`.
std::vector<SimConfig> parse_sim_config(std::istream& in, const std::string& source,
                                        std::optional<std::uint64_t> seed_override,
                                        std::uint64_t fallback_seed);

}  // namespace predpower::cli
