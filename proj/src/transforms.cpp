#include "predpower/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "predpower/errors.hpp"
#include "predpower/quadrature.hpp"
#include "validate.hpp"

namespace predpower {

Transform::Transform(Parts parts) : parts_(std::move(parts)) {
    if (!parts_.forward) {
        throw ValidationError("transform '" + parts_.name + "' has no forward map");
    }
}

double Transform::operator()(double p) const {
    detail::require_probability(p, "p");
    return parts_.forward(p);
}

double Transform::derivative(double p) const {
    detail::require_probability(p, "p");
    return parts_.derivative ? parts_.derivative(p) : finite_difference(p);
}

double Transform::finite_difference(double p) const {
    detail::require_probability(p, "p");
    const double step = std::max(1e-6, 1e-6 * std::abs(p));
    const double lo = std::max(0.0, p - step);
    const double hi = std::min(1.0, p + step);
    return (parts_.forward(hi) - parts_.forward(lo)) / (hi - lo);
}

double Transform::inverse(double chi) const {
    if (!parts_.inverse) {
        throw ValidationError("transform '" + parts_.name + "' has no inverse");
    }
    return parts_.inverse(chi);
}

std::optional<double> Transform::spread(double p) const {
    if (!parts_.spread) {
        return std::nullopt;
    }
    detail::require_probability(p, "p");
    return parts_.spread(p);
}

double chi_forward(double p, double scale, double offset) {
    detail::require_probability(p, "p");
    detail::require_scale(scale);
    return scale * std::asin(2.0 * p - 1.0) + offset;
}

double chi_inverse(double chi, double scale, double offset) {
    detail::require_scale(scale);
    if (!std::isfinite(chi) || !std::isfinite(offset)) {
        throw ValidationError("chi and D must be finite");
    }
    return 0.5 * (1.0 + std::sin((chi - offset) / scale));
}

std::complex<double> amplitude_of_chi(double chi) {
    return std::sin(0.5 * chi) * std::polar(1.0, 0.5 * chi);
}

Amplitude amplitude_from_p(double p, std::int64_t runs) {
    detail::require_probability(p, "p");
    detail::require_positive(runs, "runs");
    const double root = std::sqrt(p);
    return {root * std::complex<double>(root, std::sqrt(1.0 - p)),
            0.5 / std::sqrt(static_cast<double>(runs))};
}

Transform identity_transform() {
    return Transform({
        .name = "identity",
        .forward = [](double p) { return p; },
        .derivative = [](double) { return 1.0; },
        .inverse = [](double chi) { return chi; },
        .spread = [](double p) { return std::sqrt(p * (1.0 - p)); },
    });
}

Transform sixth_power_transform() {
    return Transform({
        .name = "pow6",
        .forward = [](double p) { return std::pow(p, 6); },
        .derivative = [](double p) { return 6.0 * std::pow(p, 5); },
        .inverse =
            [](double chi) {
                if (chi < 0.0 || chi > 1.0) {
                    throw ValidationError("pow6 inverse needs chi in [0,1]");
                }
                return std::pow(chi, 1.0 / 6.0);
            },
        .spread = [](double p) { return 6.0 * std::pow(p, 5) * std::sqrt(p * (1.0 - p)); },
    });
}

Transform arcsin_transform(double scale, double offset) {
    detail::require_scale(scale);
    return Transform({
        .name = "arcsin",
        .forward = [scale, offset](double p) { return chi_forward(p, scale, offset); },
        // Diverges to +-inf at p in {0,1}.
        .derivative = [scale](double p) { return scale / std::sqrt(p * (1.0 - p)); },
        .inverse = [scale, offset](double chi) { return chi_inverse(chi, scale, offset); },
        .spread = [scale](double) { return std::abs(scale); },
        .scale = scale,
        .offset = offset,
    });
}

Transform beta_transform() {
    return Transform({
        .name = "beta",
        .forward = [](double p) { return std::sin(0.5 * chi_forward(p)); },
        .derivative =
            [](double p) { return std::cos(0.5 * chi_forward(p)) / (2.0 * std::sqrt(p * (1.0 - p))); },
        .inverse =
            [](double beta) {
                if (beta < 0.0 || beta > 1.0) {
                    throw ValidationError("beta inverse needs a value in [0,1]");
                }
                return chi_inverse(2.0 * std::asin(beta));
            },
        .spread = [](double p) { return 0.5 * std::abs(std::cos(0.5 * chi_forward(p))); },
    });
}

Transform amplitude_transform() {
    return Transform({
        .name = "amplitude",
        .forward = [](double p) { return 0.5 * chi_forward(p); },
        .derivative = [](double p) { return 0.5 / std::sqrt(p * (1.0 - p)); },
        .inverse = [](double arc) { return chi_inverse(2.0 * arc); },
        .spread = [](double) { return 0.5; },
    });
}

const std::vector<std::string>& builtin_transform_names() {
    static const std::vector<std::string> names = {"identity", "pow6", "arcsin", "beta",
                                                   "amplitude"};
    return names;
}

Transform builtin_transform(std::string_view name) {
    if (name == "identity") return identity_transform();
    if (name == "pow6") return sixth_power_transform();
    if (name == "arcsin") return arcsin_transform();
    if (name == "beta") return beta_transform();
    if (name == "amplitude") return amplitude_transform();
    throw ValidationError("unknown transform '" + std::string(name) +
                          "' (expected identity, pow6, arcsin, beta or amplitude)");
}

Transform stabilizing_transform_from_law(std::function<double(double)> law, std::string name) {
    if (!law) {
        throw ValidationError("uncertainty law is empty");
    }

    // Integrand in u, where p = sin^2(u/2) and dp = sin(u)/2 du.
    auto integrand = [law](double u) {
        const double s = std::sin(0.5 * u);
        const double p = s * s;
        const double width = law(p);
        if (!(width > 0.0)) {
            if (p == 0.0 || p == 1.0) {
                // Refinement has reached the rounded endpoint.
                return std::numeric_limits<double>::infinity();
            }
            throw ValidationError("uncertainty law must be positive on (0,1)");
        }
        return 0.5 * std::sin(u) / width;
    };

    auto theta = [integrand, name](double p) {
        const double upper = 2.0 * std::asin(std::sqrt(p));
        const auto result = quadrature::integrate(integrand, 0.0, upper);
        if (!result.converged) {
            throw DivergentIntegralError("distinguishability integral of '" + name +
                                         "' does not converge");
        }
        return result.value;
    };

    // Probes the whole range so divergence surfaces at construction.
    theta(1.0);

    return Transform({
        .name = std::move(name),
        .forward = std::move(theta),
        .derivative = [law](double p) { return 1.0 / law(p); },
    });
}

}  // namespace predpower
