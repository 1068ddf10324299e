#include "predpower/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <boost/math/distributions/binomial.hpp>

#include "predpower/errors.hpp"
#include "predpower/estimation.hpp"
#include "validate.hpp"

namespace predpower {
namespace {

// Neumaier-compensated sum, accumulated in index order.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        compensation_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

std::int64_t chop_down_from_mode(CounterRng& rng, std::int64_t trials, double p) {
    const double n = static_cast<double>(trials);
    const auto mode = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((n + 1.0) * p)),
                                               0, trials);
    const boost::math::binomial_distribution<double> law(n, p);
    const double odds = p / (1.0 - p);

    double u = rng.uniform();
    double below = boost::math::pdf(law, static_cast<double>(mode));
    double above = below;
    u -= below;
    if (u < 0.0) {
        return mode;
    }

    std::int64_t lo = mode;
    std::int64_t hi = mode;
    while (lo > 0 || hi < trials) {
        if (lo > 0) {
            below *= static_cast<double>(lo) / (n - static_cast<double>(lo) + 1.0) / odds;
            --lo;
            u -= below;
            if (u < 0.0) {
                return lo;
            }
        }
        if (hi < trials) {
            above *= (n - static_cast<double>(hi)) / (static_cast<double>(hi) + 1.0) * odds;
            ++hi;
            u -= above;
            if (u < 0.0) {
                return hi;
            }
        }
        if (below == 0.0 && above == 0.0) {
            break;
        }
    }
    // Only reachable through rounding in the tail mass.
    return mode;
}

template <typename Draw>
SimReport run_replications(const SimConfig& config, double predicted_sd, Draw draw) {
    const auto reps = static_cast<std::size_t>(config.replications);
    std::vector<double> values(reps);

    unsigned workers = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::min<std::size_t>(reps, 256)));

    auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            CounterRng rng(config.seed, i);
            values[i] = draw(rng);
        }
    };

    if (workers == 1) {
        fill(0, reps);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (reps + workers - 1) / workers;
        for (std::size_t begin = 0; begin < reps; begin += chunk) {
            pool.emplace_back(fill, begin, std::min(reps, begin + chunk));
        }
    }

    CompensatedSum total;
    for (double v : values) {
        total.add(v);
    }
    const double mean = total.value() / static_cast<double>(reps);

    CompensatedSum squares;
    for (double v : values) {
        squares.add((v - mean) * (v - mean));
    }

    SimReport report;
    report.empirical_mean = mean;
    report.empirical_sd = std::sqrt(squares.value() / static_cast<double>(reps - 1));
    report.predicted_sd = predicted_sd;
    if (predicted_sd > 0.0) {
        report.relative_error = std::abs(report.empirical_sd - predicted_sd) / predicted_sd;
    } else {
        report.relative_error =
            report.empirical_sd == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    if (config.keep_values) {
        report.values = std::move(values);
    }
    return report;
}

double frequency(std::int64_t clicks, std::int64_t runs) {
    return static_cast<double>(clicks) / static_cast<double>(runs);
}

}  // namespace

void validate(const SimConfig& config) {
    if (config.replications < 2) {
        throw ValidationError("replications must be >= 2, got " +
                              std::to_string(config.replications));
    }
    if (const auto* single = std::get_if<SingleArmExperiment>(&config.experiment)) {
        detail::require_probability(single->p, "p");
        detail::require_positive(single->runs, "runs");
        builtin_transform(single->transform);
    } else {
        const auto& two = std::get<TwoArmExperiment>(config.experiment);
        detail::require_probability(two.p_left, "p_left");
        detail::require_probability(two.p_right, "p_right");
        detail::require_positive(two.left_runs, "left_runs");
        detail::require_positive(two.right_runs, "right_runs");
    }
}

std::int64_t sample_binomial(CounterRng& rng, std::int64_t trials, double p) {
    detail::require_probability(p, "p");
    if (trials < 0) {
        throw ValidationError("trials must be >= 0");
    }
    if (p == 0.0 || trials == 0) {
        return 0;
    }
    if (p == 1.0) {
        return trials;
    }
    if (trials > kBernoulliSamplingLimit) {
        return chop_down_from_mode(rng, trials, p);
    }
    std::int64_t successes = 0;
    for (std::int64_t k = 0; k < trials; ++k) {
        successes += rng.uniform() < p ? 1 : 0;
    }
    return successes;
}

SimReport simulate_single_arm(const SimConfig& config) {
    validate(config);
    const auto* single = std::get_if<SingleArmExperiment>(&config.experiment);
    if (single == nullptr) {
        throw ValidationError("simulate_single_arm needs a single-arm experiment");
    }
    const Transform transform = builtin_transform(single->transform);
    const double predicted = propagate(estimate_at(single->p, single->runs), transform);

    return run_replications(config, predicted, [&](CounterRng& rng) {
        return transform(frequency(sample_binomial(rng, single->runs, single->p), single->runs));
    });
}

SimReport simulate_two_arm(const SimConfig& config) {
    validate(config);
    const auto* two = std::get_if<TwoArmExperiment>(&config.experiment);
    if (two == nullptr) {
        throw ValidationError("simulate_two_arm needs a two-arm experiment");
    }
    const double predicted = prediction_uncertainty(two->left_runs, two->right_runs);
    const double sign = static_cast<int>(two->sign);

    return run_replications(config, predicted, [&](CounterRng& rng) {
        const auto left = sample_binomial(rng, two->left_runs, two->p_left);
        const auto right = sample_binomial(rng, two->right_runs, two->p_right);
        return chi_forward(frequency(left, two->left_runs)) +
               sign * chi_forward(frequency(right, two->right_runs));
    });
}

SimReport simulate(const SimConfig& config) {
    return std::holds_alternative<SingleArmExperiment>(config.experiment)
               ? simulate_single_arm(config)
               : simulate_two_arm(config);
}

std::vector<SweepEntry> sweep(std::span<const SimConfig> configs) {
    if (configs.empty()) {
        throw ValidationError("sweep needs at least one config");
    }
    std::vector<SweepEntry> entries(configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i) {
        try {
            entries[i].report = simulate(configs[i]);
        } catch (const std::exception& e) {
            entries[i].error = e.what();
        }
    }
    return entries;
}

}  // namespace predpower
