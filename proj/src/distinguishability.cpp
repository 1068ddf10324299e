#include "predpower/distinguishability.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "predpower/errors.hpp"
#include "validate.hpp"

namespace predpower {

ThetaValue theta_of(const TrialRecord& record) {
    const double root_n = std::sqrt(static_cast<double>(record.runs()));
    const double p = estimate(record).p;
    return {root_n * (std::asin(2.0 * p - 1.0) + std::numbers::pi / 2.0), record.runs()};
}

ThetaValue theta_by_quadrature(const TrialRecord& record) {
    const auto runs = static_cast<double>(record.runs());
    const Transform theta = stabilizing_transform_from_law(
        [runs](double p) { return std::sqrt(p * (1.0 - p) / runs); }, "theta");
    return {theta(estimate(record).p), record.runs()};
}

double theta_chi_correspondence(const TrialRecord& record) {
    const double reduced = theta_of(record).theta / std::sqrt(static_cast<double>(record.runs()));
    const double chi = chi_forward(estimate(record).p);
    if (std::abs(reduced - chi) > 1e-12) {
        throw std::logic_error("theta/sqrt(N) departs from chi");
    }
    return reduced;
}

std::int64_t count_distinguishable(std::int64_t runs, double separation) {
    detail::require_positive(runs, "runs");
    if (!(separation > 0.0) || !std::isfinite(separation)) {
        throw ValidationError("separation must be positive and finite");
    }
    const double theta_max = std::numbers::pi * std::sqrt(static_cast<double>(runs));
    return static_cast<std::int64_t>(std::floor(theta_max / separation)) + 1;
}

}  // namespace predpower
