#pragma once

#include <cstddef>
#include <functional>

namespace predpower::quadrature {

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t intervals = 0;
    bool converged = false;
};

struct Options {
    double abs_tolerance = 1e-9;
    std::size_t max_intervals = 4000;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration over [a, b].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below abs_tolerance. Endpoints are never evaluated, so
/// integrable endpoint singularities are handled by refinement alone.
/// `converged` is false when the interval budget runs out, an interval
/// shrinks below machine resolution, or the integrand returns a non-finite
/// value.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& options = {});

}  // namespace predpower::quadrature
