#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "predpower/errors.hpp"
#include "predpower/montecarlo.hpp"

using namespace predpower;
using Catch::Approx;

namespace {

SimConfig single(double p, std::int64_t runs, std::int64_t reps, std::string transform = "arcsin",
                 std::uint64_t seed = 2024) {
    return {SingleArmExperiment{p, runs, std::move(transform)}, reps, seed};
}

}  // namespace

TEST_CASE("counter rng streams are pure functions of seed, stream and counter", "[montecarlo]") {
    CounterRng a(42, 7);
    CounterRng b(42, 7);
    CounterRng c(42, 8);
    CounterRng d(43, 7);
    std::vector<std::uint64_t> xa, xb;
    bool differs_stream = false;
    bool differs_seed = false;
    for (int i = 0; i < 1000; ++i) {
        xa.push_back(a());
        xb.push_back(b());
        differs_stream = differs_stream || xa.back() != c();
        differs_seed = differs_seed || xa.back() != d();
    }
    CHECK(xa == xb);
    CHECK(differs_stream);
    CHECK(differs_seed);
    CHECK(a.counter() == 1000);
}

TEST_CASE("uniform draws stay in [0,1) with the right mean", "[montecarlo]") {
    CounterRng rng(1, 0);
    double sum = 0.0;
    for (int i = 0; i < 1'000'000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / 1e6 == Approx(0.5).margin(0.002));
}

TEST_CASE("binomial sampler moments", "[montecarlo]") {
    constexpr int kDraws = 1'000'000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < kDraws; ++i) {
        CounterRng rng(99, static_cast<std::uint64_t>(i));
        const auto k = static_cast<double>(sample_binomial(rng, 10, 0.5));
        sum += k;
        sum_sq += k * k;
    }
    const double mean = sum / kDraws;
    const double var = (sum_sq - kDraws * mean * mean) / (kDraws - 1);
    CHECK(std::abs(mean - 5.0) < 0.01);
    CHECK(std::abs(var - 2.5) / 2.5 < 0.02);
}

TEST_CASE("binomial sampler histogram matches the pmf", "[montecarlo]") {
    // Chi-square goodness of fit, 10 degrees of freedom: 0.999 quantile is 29.59.
    constexpr int kDraws = 200'000;
    std::vector<double> counts(11, 0.0);
    for (int i = 0; i < kDraws; ++i) {
        CounterRng rng(5, static_cast<std::uint64_t>(i));
        counts[static_cast<std::size_t>(sample_binomial(rng, 10, 0.3))] += 1;
    }
    double chi_sq = 0.0;
    for (int k = 0; k <= 10; ++k) {
        const double expected = kDraws * static_cast<double>(oracle::binomial_pmf(10, k, 0.3L));
        chi_sq += (counts[k] - expected) * (counts[k] - expected) / expected;
    }
    CHECK(chi_sq < 29.59);
}

TEST_CASE("large-trial binomial sampler moments", "[montecarlo]") {
    constexpr int kDraws = 20'000;
    constexpr std::int64_t kTrials = 1'000'000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < kDraws; ++i) {
        CounterRng rng(17, static_cast<std::uint64_t>(i));
        const auto k = static_cast<double>(sample_binomial(rng, kTrials, 0.2));
        REQUIRE(k >= 0.0);
        REQUIRE(k <= kTrials);
        sum += k;
        sum_sq += k * k;
    }
    const double mean = sum / kDraws;
    const double var = (sum_sq - kDraws * mean * mean) / (kDraws - 1);
    // sd of the mean is 400 / sqrt(20000) ~ 2.8.
    CHECK(std::abs(mean - 200'000.0) < 15.0);
    CHECK(std::abs(var - 160'000.0) / 160'000.0 < 0.05);
}

TEST_CASE("degenerate binomial parameters", "[montecarlo]") {
    CounterRng rng(0, 0);
    CHECK(sample_binomial(rng, 50, 0.0) == 0);
    CHECK(sample_binomial(rng, 50, 1.0) == 50);
    CHECK(sample_binomial(rng, 0, 0.4) == 0);
    CHECK(sample_binomial(rng, 20'000, 1.0) == 20'000);
    CHECK_THROWS_AS(sample_binomial(rng, 5, 1.5), ValidationError);
}

TEST_CASE("config validation", "[montecarlo]") {
    CHECK_THROWS_AS(validate(single(0.5, 10, 1)), ValidationError);
    CHECK_THROWS_AS(validate(single(1.5, 10, 10)), ValidationError);
    CHECK_THROWS_AS(validate(single(0.5, 0, 10)), ValidationError);
    CHECK_THROWS_AS(validate(single(0.5, 10, 10, "nope")), ValidationError);
    CHECK_NOTHROW(validate(single(0.5, 10, 2)));

    SimConfig two{TwoArmExperiment{0.3, 0.6, 0, 10, Sign::plus}, 10, 1};
    CHECK_THROWS_AS(validate(two), ValidationError);
    CHECK_THROWS_AS(simulate_two_arm(single(0.5, 10, 10)), ValidationError);
    CHECK_THROWS_AS(simulate_single_arm(two), ValidationError);
}

TEST_CASE("smallest replication count produces a report", "[montecarlo]") {
    const auto report = simulate_single_arm(single(0.3, 400, 2, "identity"));
    CHECK(std::isfinite(report.empirical_sd));
    CHECK(report.predicted_sd == Approx(std::sqrt(0.21 / 400)));
}

TEST_CASE("single-arm spread agrees with exact enumeration", "[montecarlo]") {
    // The exact sd of chi-hat under Bin(N, p) is the Monte Carlo target; the
    // delta-method prediction is what the report compares against.
    for (double p : {0.2, 0.5, 0.8}) {
        const auto report = simulate_single_arm(single(p, 100, 100'000));
        const double exact = oracle::exact_sd(oracle::canonical_chi, 100, p);
        INFO("p=" << p);
        CHECK(report.empirical_sd == Approx(exact).epsilon(0.015));
        CHECK(report.predicted_sd == Approx(0.1).epsilon(1e-14));
        CHECK(report.relative_error ==
              Approx(std::abs(report.empirical_sd - 0.1) / 0.1).epsilon(1e-14));
    }
}

TEST_CASE("arcsin stabilizes, identity does not", "[montecarlo]") {
    std::vector<SimConfig> configs;
    for (int i = 1; i <= 9; ++i) {
        configs.push_back(single(i / 10.0, 400, 20'000, "arcsin", 100 + i));
        configs.push_back(single(i / 10.0, 400, 20'000, "identity", 100 + i));
    }
    const auto entries = sweep(configs);
    double arc_lo = 1e9, arc_hi = 0, id_lo = 1e9, id_hi = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        REQUIRE(entries[i].ok());
        const double sd = entries[i].report->empirical_sd;
        if (i % 2 == 0) {
            arc_lo = std::min(arc_lo, sd);
            arc_hi = std::max(arc_hi, sd);
        } else {
            id_lo = std::min(id_lo, sd);
            id_hi = std::max(id_hi, sd);
        }
    }
    CHECK(arc_hi / arc_lo < 1.05);
    CHECK(id_hi / id_lo > 1.5);
}

TEST_CASE("beta map spread depends on p", "[montecarlo]") {
    double lo = 1e9, hi = 0;
    for (int i = 1; i <= 9; ++i) {
        const auto r = simulate_single_arm(single(i / 10.0, 400, 20'000, "beta"));
        lo = std::min(lo, r.empirical_sd);
        hi = std::max(hi, r.empirical_sd);
    }
    CHECK(hi / lo > 1.5);
}

TEST_CASE("two-arm spread", "[montecarlo]") {
    SimConfig config{TwoArmExperiment{0.3, 0.6, 400, 400, Sign::plus}, 50'000, 77};
    const auto plus = simulate_two_arm(config);
    CHECK(plus.predicted_sd == Approx(std::sqrt(2.0) / 20).epsilon(1e-15));
    CHECK(plus.relative_error < 0.05);

    config.experiment = TwoArmExperiment{0.3, 0.6, 400, 400, Sign::minus};
    const auto minus = simulate_two_arm(config);
    CHECK(minus.empirical_sd == Approx(plus.empirical_sd).epsilon(0.03));

    config.experiment = TwoArmExperiment{0.4, 0.7, 1'000'000, 100, Sign::plus};
    config.replications = 5'000;
    const auto lopsided = simulate_two_arm(config);
    CHECK(lopsided.empirical_sd == Approx(0.1).epsilon(0.05));
}

TEST_CASE("simulation is deterministic regardless of thread count", "[montecarlo]") {
    SimConfig a = single(0.37, 250, 5'000, "pow6", 31337);
    a.keep_values = true;
    a.threads = 1;
    SimConfig b = a;
    b.threads = 7;
    const auto ra = simulate(a);
    const auto rb = simulate(b);
    REQUIRE(ra.values.size() == 5'000);
    CHECK(ra.values == rb.values);
    CHECK(ra.empirical_sd == rb.empirical_sd);
    CHECK(ra.empirical_mean == rb.empirical_mean);

    SimConfig c = a;
    c.seed = 31338;
    CHECK(simulate(c).values != ra.values);
}

TEST_CASE("sweep keeps order and isolates failures", "[montecarlo]") {
    std::vector<SimConfig> configs = {single(0.5, 40, 1000), single(0.5, 40, 1),
                                      single(0.2, 40, 1000)};
    const auto entries = sweep(configs);
    REQUIRE(entries.size() == 3);
    CHECK(entries[0].ok());
    CHECK_FALSE(entries[1].ok());
    CHECK(entries[1].error.find("replications") != std::string::npos);
    CHECK(entries[2].ok());
    CHECK(entries[2].report->empirical_sd == simulate(configs[2]).empirical_sd);

    CHECK_THROWS_AS(sweep({}), ValidationError);
}

TEST_CASE("boundary outcomes stay in the sample", "[montecarlo]") {
    // p = 0.02, N = 10: about 82% of replications see zero clicks.
    SimConfig config = single(0.02, 10, 10'000, "identity");
    config.keep_values = true;
    const auto r = simulate(config);
    const auto zeros = std::count(r.values.begin(), r.values.end(), 0.0);
    CHECK(zeros > 7'500);
    CHECK(r.values.size() == 10'000);
    const double exact = oracle::exact_sd([](long double q) { return q; }, 10, 0.02L);
    CHECK(r.empirical_sd == Approx(exact).epsilon(0.05));
}
