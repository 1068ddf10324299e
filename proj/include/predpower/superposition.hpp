#pragma once

#include <cstdint>
#include <variant>

#include "predpower/estimation.hpp"
#include "predpower/transforms.hpp"

namespace predpower {

/// One path of a two-path experiment measured with the other path blocked.
struct ArmMeasurement {
    TrialRecord record;
    ProbEstimate est;
    double chi;
    Amplitude amplitude;
};

ArmMeasurement measure_arm(const TrialRecord& record);

enum class Sign : int { plus = 1, minus = -1 };

/// Phase angle in radians, normalized to [0, 2pi).
struct Phase {
    double radians;
};

enum class UncertaintyMetric {
    /// sqrt(1/L + 1/R), the spread of chi_L +- chi_R.
    chi,
    /// sqrt(1/(4L) + 1/(4R)), the spread of s alpha_L + t alpha_R.
    amplitude,
};

enum class RangePolicy {
    /// Throw OutOfModelError when the raw prediction leaves [0,1].
    reject,
    /// Clamp into [0,1] and set Prediction::clamped.
    clamp,
};

struct Prediction {
    double p_tot = 0.0;
    double p_tot_raw = 0.0;
    double delta_chi_tot = 0.0;
    /// Delta-method pushforward of delta_chi_tot onto p_tot. A secondary
    /// quantity; the combination rule itself only fixes delta_chi_tot.
    double delta_p_tot = 0.0;
    std::variant<Sign, Phase> mode;
    UncertaintyMetric metric = UncertaintyMetric::chi;
    bool clamped = false;
};

/// Real combination chi_tot = chi_L + sign * chi_R, p_tot = sin^2(chi_tot / 2).
Prediction predict_real(const ArmMeasurement& left, const ArmMeasurement& right, Sign sign);

/// Complex combination p_tot = |s alpha_L + t alpha_R|^2 with unimodular s, t:
/// p_L + p_R + 2 sqrt(p_L p_R) cos(phi). Raw values within 1e-12 of [0,1]
/// count as in range and are returned unchanged.
Prediction predict_complex(const ArmMeasurement& left, const ArmMeasurement& right, double phi,
                           RangePolicy policy = RangePolicy::reject,
                           UncertaintyMetric metric = UncertaintyMetric::chi);

/// Both phases consistent with a measured p_tot; `principal` is in [0, pi]
/// and `mirrored` = 2pi - principal (reported in [0, 2pi)).
struct PhaseEstimate {
    double principal;
    double mirrored;
};

/// Inverts the complex combination for phi. Needs p_L > 0 and p_R > 0, and
/// accepts p_tot within 1e-12 of [0,1] so that predictions round-trip.
/// Throws InconsistentDataError when |cos phi| would exceed 1 + 1e-9.
PhaseEstimate infer_phase(const ArmMeasurement& left, const ArmMeasurement& right,
                          double p_tot_measured);

/// Prediction uncertainty from the run counts alone.
double prediction_uncertainty(std::int64_t left_runs, std::int64_t right_runs,
                              UncertaintyMetric metric = UncertaintyMetric::chi);

/// Wraps an angle into [0, 2pi).
double normalize_phase(double radians);

}  // namespace predpower
