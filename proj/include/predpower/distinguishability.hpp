#pragma once

#include <cstdint>

#include "predpower/estimation.hpp"

namespace predpower {

/// Number of statistically distinguishable results between 0 and the
/// observed relative frequency, in units of the uncertainty interval.
struct ThetaValue {
    double theta = 0.0;
    std::int64_t runs = 1;
};

/// Closed form: sqrt(N) * (arcsin(2 n1/N - 1) + pi/2).
ThetaValue theta_of(const TrialRecord& record);

/// Same quantity from adaptive quadrature of dp / sqrt(p(1-p)/N).
ThetaValue theta_by_quadrature(const TrialRecord& record);

/// theta / sqrt(N). Throws std::logic_error if it departs from the canonical
/// chi of the same frequency by more than 1e-12.
double theta_chi_correspondence(const TrialRecord& record);

/// floor(pi sqrt(runs) / separation) + 1: cells of width `separation` along
/// the theta axis, counting the cell that holds the boundary result.
std::int64_t count_distinguishable(std::int64_t runs, double separation = 1.0);

}  // namespace predpower
