#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace predpower {

inline constexpr double kCanonicalScale = 1.0;
inline constexpr double kCanonicalOffset = std::numbers::pi / 2.0;

/// A named map from a probability p in [0,1] to a real variable chi.
///
/// Every transform has a forward map. The closed-form derivative, the
/// inverse and the spread rule are optional. When the derivative is missing,
/// derivative() falls back to finite differences. The spread rule returns
/// |dchi/dp| * sqrt(p(1-p)) in closed form; it supplies the limit of the
/// propagated uncertainty at p in {0,1} where the derivative may diverge.
///
/// Transform values are immutable once built and safe to share across threads.
class Transform {
public:
    using Map = std::function<double(double)>;

    struct Parts {
        std::string name;
        Map forward;
        Map derivative;
        Map inverse;
        Map spread;
        double scale = 1.0;
        double offset = 0.0;
    };

    explicit Transform(Parts parts);

    const std::string& name() const noexcept { return parts_.name; }
    double scale() const noexcept { return parts_.scale; }
    double offset() const noexcept { return parts_.offset; }

    double operator()(double p) const;

    bool has_closed_form_derivative() const noexcept { return static_cast<bool>(parts_.derivative); }

    /// Closed-form derivative when present, finite differences otherwise.
    double derivative(double p) const;

    /// Central difference with step max(1e-6, 1e-6|p|), clipped to [0,1].
    double finite_difference(double p) const;

    bool has_inverse() const noexcept { return static_cast<bool>(parts_.inverse); }
    double inverse(double chi) const;

    std::optional<double> spread(double p) const;

private:
    Parts parts_;
};

/// Uncertainty radius of a complex amplitude around its value.
struct Amplitude {
    std::complex<double> value;
    double delta = 0.0;

    double re() const noexcept { return value.real(); }
    double im() const noexcept { return value.imag(); }
    double probability() const noexcept { return std::norm(value); }
};

/// chi = C * arcsin(2p - 1) + D.
double chi_forward(double p, double scale = kCanonicalScale, double offset = kCanonicalOffset);

/// p = (1 + sin((chi - D) / C)) / 2. Periodic in chi.
double chi_inverse(double chi, double scale = kCanonicalScale, double offset = kCanonicalOffset);

/// alpha(chi) = sin(chi/2) e^{i chi/2}, a circle of radius 1/2 around i/2.
std::complex<double> amplitude_of_chi(double chi);

/// alpha = sqrt(p) (sqrt(p) + i sqrt(1-p)) with uncertainty radius 1/(2 sqrt(runs)).
Amplitude amplitude_from_p(double p, std::int64_t runs);

Transform identity_transform();
Transform sixth_power_transform();
Transform arcsin_transform(double scale = kCanonicalScale, double offset = kCanonicalOffset);

/// beta = sin(chi/2) with chi the canonical arcsin variable.
Transform beta_transform();

/// Real coordinate of the amplitude curve: arc length travelled along alpha
/// from alpha = 0, which equals chi/2. Its derivative is |dalpha/dp|.
Transform amplitude_transform();

/// Looks up a built-in transform: identity, pow6, arcsin, beta, amplitude.
Transform builtin_transform(std::string_view name);

const std::vector<std::string>& builtin_transform_names();

/// Builds theta(p) = integral_0^p dp' / law(p') by adaptive Gauss-Kronrod
/// quadrature in the variable u with p = sin^2(u/2), which removes the
/// inverse square-root singularities of binomial-type laws at 0 and 1.
///
/// The law must be positive on (0,1). Throws DivergentIntegralError when the
/// full integral over [0,1] does not converge to absolute tolerance 1e-9.
Transform stabilizing_transform_from_law(std::function<double(double)> law,
                                         std::string name = "stabilized");

}  // namespace predpower
