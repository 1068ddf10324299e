#include "predpower/superposition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "predpower/errors.hpp"
#include "validate.hpp"

namespace predpower {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Raw predictions within this distance of [0,1] are rounding, not model failure.
constexpr double kRangeSlack = 1e-12;
constexpr double kCosineSlack = 1e-9;

// 2 sqrt(p_L p_R). Shared by prediction and inversion so that both round the
// same way and phi = 0, pi survive a round trip exactly.
double cross_term(const ArmMeasurement& left, const ArmMeasurement& right) {
    return 2.0 * std::sqrt(left.est.p * right.est.p);
}

}  // namespace

OutOfModelError::OutOfModelError(double raw)
    : std::range_error("predicted probability " + std::to_string(raw) + " lies outside [0,1]"),
      raw_(raw) {}

InconsistentDataError::InconsistentDataError(double cosine)
    : std::domain_error("no phase reproduces the data: cos(phi) would be " +
                        std::to_string(cosine)),
      cosine_(cosine) {}

ArmMeasurement measure_arm(const TrialRecord& record) {
    const ProbEstimate est = estimate(record);
    return {record, est, chi_forward(est.p), amplitude_from_p(est.p, record.runs())};
}

double normalize_phase(double radians) {
    if (!std::isfinite(radians)) {
        throw ValidationError("phase must be finite");
    }
    double wrapped = std::fmod(radians, kTwoPi);
    if (wrapped < 0.0) {
        wrapped += kTwoPi;
    }
    return wrapped >= kTwoPi ? 0.0 : wrapped;
}

double prediction_uncertainty(std::int64_t left_runs, std::int64_t right_runs,
                              UncertaintyMetric metric) {
    detail::require_positive(left_runs, "L");
    detail::require_positive(right_runs, "R");
    const double chi_metric =
        std::sqrt(1.0 / static_cast<double>(left_runs) + 1.0 / static_cast<double>(right_runs));
    return metric == UncertaintyMetric::chi ? chi_metric : 0.5 * chi_metric;
}

Prediction predict_real(const ArmMeasurement& left, const ArmMeasurement& right, Sign sign) {
    const double chi_tot = left.chi + static_cast<int>(sign) * right.chi;
    const double half_sine = std::sin(0.5 * chi_tot);
    const double p_tot = half_sine * half_sine;

    Prediction out;
    out.p_tot = p_tot;
    out.p_tot_raw = p_tot;
    out.delta_chi_tot = prediction_uncertainty(left.record.runs(), right.record.runs());
    // d sin^2(x/2) / dx = sin(x) / 2
    out.delta_p_tot = 0.5 * std::abs(std::sin(chi_tot)) * out.delta_chi_tot;
    out.mode = sign;
    return out;
}

Prediction predict_complex(const ArmMeasurement& left, const ArmMeasurement& right, double phi,
                           RangePolicy policy, UncertaintyMetric metric) {
    const double phase = normalize_phase(phi);
    const double raw = left.est.p + right.est.p + cross_term(left, right) * std::cos(phi);

    Prediction out;
    out.p_tot_raw = raw;
    out.p_tot = raw;
    if (raw < -kRangeSlack || raw > 1.0 + kRangeSlack) {
        if (policy == RangePolicy::reject) {
            throw OutOfModelError(raw);
        }
        out.p_tot = std::clamp(raw, 0.0, 1.0);
        out.clamped = true;
    }
    out.delta_chi_tot = prediction_uncertainty(left.record.runs(), right.record.runs(), metric);
    // |d|alpha|^2| <= 2 |alpha| |d alpha|, with the amplitude-metric spread.
    out.delta_p_tot = 2.0 * std::sqrt(std::max(out.p_tot, 0.0)) *
                      prediction_uncertainty(left.record.runs(), right.record.runs(),
                                             UncertaintyMetric::amplitude);
    out.mode = Phase{phase};
    out.metric = metric;
    return out;
}

PhaseEstimate infer_phase(const ArmMeasurement& left, const ArmMeasurement& right,
                          double p_tot_measured) {
    if (!(p_tot_measured >= -kRangeSlack && p_tot_measured <= 1.0 + kRangeSlack)) {
        throw ValidationError("p_tot must lie in [0,1], got " + std::to_string(p_tot_measured));
    }
    if (!(left.est.p > 0.0) || !(right.est.p > 0.0)) {
        throw ValidationError("phase inference needs p_L > 0 and p_R > 0");
    }

    const double sum = left.est.p + right.est.p;
    const double cross = cross_term(left, right);
    const double cosine = (p_tot_measured - sum) / cross;
    if (std::abs(cosine) > 1.0 + kCosineSlack) {
        throw InconsistentDataError(cosine);
    }

    // Half-angle form: both terms vanish exactly at the extreme phases, where
    // arccos of the cosine would lose half the significant digits.
    const double sin_sq = std::max(sum + cross - p_tot_measured, 0.0);
    const double cos_sq = std::max(p_tot_measured - (sum - cross), 0.0);
    const double principal = 2.0 * std::atan2(std::sqrt(sin_sq), std::sqrt(cos_sq));
    return {principal, normalize_phase(kTwoPi - principal)};
}

}  // namespace predpower
