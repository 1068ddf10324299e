#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "predpower/rng.hpp"
#include "predpower/superposition.hpp"

namespace predpower {

/// Largest trial count sampled by explicit Bernoulli draws.
inline constexpr std::int64_t kBernoulliSamplingLimit = 10'000;

/// Single arm: n1 ~ Bin(runs, p), chi-hat = transform(n1 / runs).
struct SingleArmExperiment {
    double p = 0.5;
    std::int64_t runs = 1;
    std::string transform = "arcsin";
};

/// Two arms: chi-hat_tot = chi-hat_L + sign * chi-hat_R with canonical chi.
struct TwoArmExperiment {
    double p_left = 0.5;
    double p_right = 0.5;
    std::int64_t left_runs = 1;
    std::int64_t right_runs = 1;
    Sign sign = Sign::plus;
};

struct SimConfig {
    std::variant<SingleArmExperiment, TwoArmExperiment> experiment;
    std::int64_t replications = 2;
    std::uint64_t seed = 0;
    bool keep_values = false;
    /// Worker threads; 0 picks the hardware concurrency. Results do not depend on it.
    unsigned threads = 0;
};

struct SimReport {
    double empirical_mean = 0.0;
    double empirical_sd = 0.0;
    double predicted_sd = 0.0;
    /// |empirical - predicted| / predicted; 0 when both vanish, +inf when only predicted does.
    double relative_error = 0.0;
    /// Per-replication chi-hat, filled when SimConfig::keep_values is set.
    std::vector<double> values;
};

/// Throws ValidationError describing the first violated precondition.
void validate(const SimConfig& config);

/// Bin(trials, p) draw. Explicit Bernoulli trials up to kBernoulliSamplingLimit,
/// inversion by chop-down search from the mode above it.
std::int64_t sample_binomial(CounterRng& rng, std::int64_t trials, double p);

SimReport simulate_single_arm(const SimConfig& config);
SimReport simulate_two_arm(const SimConfig& config);

/// Dispatches on the experiment kind.
SimReport simulate(const SimConfig& config);

struct SweepEntry {
    std::optional<SimReport> report;
    std::string error;

    bool ok() const noexcept { return report.has_value(); }
};

/// Runs every config; a failing config records its error and the sweep goes on.
/// Throws ValidationError for an empty list.
std::vector<SweepEntry> sweep(std::span<const SimConfig> configs);

}  // namespace predpower
