#include "predpower/estimation.hpp"

#include <cmath>
#include <string>

#include "predpower/errors.hpp"
#include "validate.hpp"

namespace predpower {

NonDifferentiableError::NonDifferentiableError(const std::string& transform, double p)
    : std::domain_error("transform '" + transform + "' is not differentiable at p = " +
                        std::to_string(p)),
      point_(p) {}

TrialRecord::TrialRecord(std::int64_t clicks, std::int64_t runs) : clicks_(clicks), runs_(runs) {
    detail::require_positive(runs, "runs");
    if (clicks < 0 || clicks > runs) {
        throw ValidationError("clicks must lie in [0, runs], got clicks=" + std::to_string(clicks) +
                              " runs=" + std::to_string(runs));
    }
}

TrialRecord TrialRecord::continued(Detector detector) const {
    return {clicks_ + (detector == Detector::first ? 1 : 0), runs_ + 1};
}

ProbEstimate estimate(const TrialRecord& record, Estimator estimator) {
    const auto runs = static_cast<double>(record.runs());
    const double p = estimator == Estimator::plain
                         ? static_cast<double>(record.clicks()) / runs
                         : (static_cast<double>(record.clicks()) + 0.5) / (runs + 1.0);
    return {p, std::sqrt(p * (1.0 - p) / runs), record.runs()};
}

ProbEstimate estimate_at(double p, std::int64_t runs) {
    detail::require_probability(p, "p");
    detail::require_positive(runs, "runs");
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(runs)), runs};
}

double propagate(const ProbEstimate& est, const Transform& transform) {
    const double slope = transform.derivative(est.p);
    if (std::isfinite(slope)) {
        return std::abs(slope) * est.delta_p;
    }
    const bool endpoint = est.p == 0.0 || est.p == 1.0;
    if (endpoint) {
        if (const auto spread = transform.spread(est.p); spread && std::isfinite(*spread)) {
            return *spread / std::sqrt(static_cast<double>(est.runs));
        }
    }
    throw NonDifferentiableError(transform.name(), est.p);
}

std::vector<MonotonicityViolation> monotonicity_scan(const Transform& transform,
                                                     std::int64_t max_runs) {
    if (max_runs < 2) {
        throw ValidationError("max_runs must be >= 2");
    }

    auto row = [&transform](std::int64_t runs) {
        std::vector<double> deltas(static_cast<std::size_t>(runs) + 1);
        for (std::int64_t n = 0; n <= runs; ++n) {
            deltas[static_cast<std::size_t>(n)] = propagate(estimate(TrialRecord(n, runs)), transform);
        }
        return deltas;
    };

    std::vector<MonotonicityViolation> violations;
    std::vector<double> current = row(1);
    for (std::int64_t runs = 1; runs <= max_runs; ++runs) {
        std::vector<double> next = row(runs + 1);
        for (std::int64_t n = 0; n <= runs; ++n) {
            const auto i = static_cast<std::size_t>(n);
            const double before = current[i];
            if (!(next[i + 1] < before)) {
                violations.push_back({runs, n, Detector::first, before, next[i + 1]});
            }
            if (!(next[i] < before)) {
                violations.push_back({runs, n, Detector::second, before, next[i]});
            }
        }
        current = std::move(next);
    }
    return violations;
}

}  // namespace predpower
