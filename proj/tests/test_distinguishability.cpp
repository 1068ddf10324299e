#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "predpower/distinguishability.hpp"
#include "predpower/errors.hpp"

using namespace predpower;
using Catch::Approx;
using std::numbers::pi;

TEST_CASE("theta closed form", "[distinguishability]") {
    CHECK(theta_of(TrialRecord(0, 37)).theta == Approx(0.0).margin(1e-14));
    CHECK(theta_of(TrialRecord(100, 100)).theta == Approx(10 * pi).epsilon(1e-15));
    CHECK(theta_of(TrialRecord(50, 100)).theta == Approx(10 * pi / 2).epsilon(1e-15));
    CHECK(theta_of(TrialRecord(50, 100)).runs == 100);
}

TEST_CASE("theta by quadrature agrees with the closed form", "[distinguishability]") {
    for (std::int64_t runs : {1, 2, 10, 97}) {
        for (std::int64_t n = 0; n <= runs; ++n) {
            const TrialRecord r(n, runs);
            REQUIRE(std::abs(theta_of(r).theta - theta_by_quadrature(r).theta) < 1e-6);
        }
    }
}

TEST_CASE("theta is strictly increasing in the click count", "[distinguishability][property]") {
    for (std::int64_t runs : {1, 5, 64, 1000}) {
        double previous = -1.0;
        for (std::int64_t n = 0; n <= runs; ++n) {
            const double theta = theta_of(TrialRecord(n, runs)).theta;
            REQUIRE(theta > previous);
            REQUIRE(theta <= pi * std::sqrt(static_cast<double>(runs)) * (1 + 1e-15));
            previous = theta;
        }
    }
}

TEST_CASE("theta over sqrt(N) is chi", "[distinguishability]") {
    CHECK(theta_chi_correspondence(TrialRecord(50, 100)) == Approx(pi / 2).epsilon(1e-15));
    CHECK(theta_chi_correspondence(TrialRecord(90, 100)) == Approx(2.49809154479650885).epsilon(1e-15));
    CHECK(theta_chi_correspondence(TrialRecord(0, 7)) == Approx(0.0).margin(1e-15));
    for (std::int64_t n = 0; n <= 333; ++n) {
        REQUIRE_NOTHROW(theta_chi_correspondence(TrialRecord(n, 333)));
    }
}

TEST_CASE("count of distinguishable results", "[distinguishability]") {
    CHECK(count_distinguishable(100, pi * 10) == 2);
    CHECK(count_distinguishable(100) == 32);
    CHECK(count_distinguishable(1) == 4);
    CHECK(count_distinguishable(100, 2.0) == 16);
    CHECK_THROWS_AS(count_distinguishable(100, 0.0), ValidationError);
    CHECK_THROWS_AS(count_distinguishable(0, 1.0), ValidationError);
}

TEST_CASE("distinguishable count doubles when runs quadruple", "[distinguishability][property]") {
    for (std::int64_t runs = 1; runs <= 2000; runs += 13) {
        for (double separation : {0.5, 1.0, 2.0, 3.7}) {
            const auto once = count_distinguishable(runs, separation);
            const auto quadrupled = count_distinguishable(4 * runs, separation);
            REQUIRE(std::abs(quadrupled - 2 * once) <= 1);
        }
    }
}
