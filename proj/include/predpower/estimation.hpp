#pragma once

#include <cstdint>
#include <vector>

#include "predpower/transforms.hpp"

namespace predpower {

enum class Detector { first, second };

/// Click counts of one two-detector experiment: `clicks` in detector 1 out of `runs`.
class TrialRecord {
public:
    /// Throws ValidationError unless 0 <= clicks <= runs and runs >= 1.
    TrialRecord(std::int64_t clicks, std::int64_t runs);

    std::int64_t clicks() const noexcept { return clicks_; }
    std::int64_t runs() const noexcept { return runs_; }
    std::int64_t misses() const noexcept { return runs_ - clicks_; }

    /// The record after one more run that ended in `detector`.
    TrialRecord continued(Detector detector) const;

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;

private:
    std::int64_t clicks_;
    std::int64_t runs_;
};

struct ProbEstimate {
    double p = 0.0;
    double delta_p = 0.0;
    std::int64_t runs = 1;
};

enum class Estimator {
    /// p = clicks / runs.
    plain,
    /// p = (clicks + 1/2) / (runs + 1); never lands on 0 or 1.
    adjusted,
};

/// p and its large-N uncertainty interval sqrt(p(1-p)/runs).
ProbEstimate estimate(const TrialRecord& record, Estimator estimator = Estimator::plain);

/// The estimate a record would give if its relative frequency were exactly p.
ProbEstimate estimate_at(double p, std::int64_t runs);

/// Propagated uncertainty |dchi/dp| * delta_p at est.p.
///
/// Uses the transform's closed-form derivative when present, central finite
/// differences otherwise. Where the derivative diverges but delta_p vanishes
/// (p in {0,1}) the transform's spread rule supplies the limit
/// spread(p) / sqrt(runs). Throws NonDifferentiableError when no finite
/// value can be formed.
double propagate(const ProbEstimate& est, const Transform& transform);

struct MonotonicityViolation {
    std::int64_t runs;
    std::int64_t clicks;
    Detector continuation;
    double delta_before;
    double delta_after;
};

/// Every (N, n1, next outcome) with 1 <= N <= max_runs for which the
/// propagated uncertainty after run N+1 is not strictly below that after run N.
std::vector<MonotonicityViolation> monotonicity_scan(const Transform& transform,
                                                     std::int64_t max_runs);

}  // namespace predpower
