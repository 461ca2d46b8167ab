#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sscl/polynomial.hpp"

namespace sscl {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const noexcept { return hi - lo; }
};

/// One flux component A with cached derivative data for the FV kernels.
///
/// `sign = -1` represents the reversed flux -A used on decreasing path pieces.
class ScalarFlux {
public:
    ScalarFlux() = default;
    explicit ScalarFlux(Polynomial A, double sign = 1.0);

    double flux(double u) const noexcept { return sign_ * A_(u); }
    double speed(double u) const noexcept { return sign_ * a_(u); }
    /// Minimum of the (signed) flux over [lo, hi].
    double min_on(double lo, double hi) const noexcept;
    double max_on(double lo, double hi) const noexcept;
    /// max |A'| over [lo, hi].
    double max_speed(double lo, double hi) const noexcept;
    /// Integral of |A'| over [lo, hi], lo <= hi.
    double total_variation(double lo, double hi) const noexcept;

    ScalarFlux negated() const;
    double sign() const noexcept { return sign_; }
    const Polynomial& A() const noexcept { return A_; }

private:
    Polynomial A_;
    Polynomial a_;
    double sign_ = 1.0;
    std::vector<double> flux_critical_;   // roots of a
    std::vector<double> speed_critical_;  // roots of a'
};

/// Polynomial flux A : R -> R^N together with growth data.
struct FluxSpec {
    std::string name;
    std::vector<Polynomial> A;
    std::vector<Polynomial> a;
    std::vector<Polynomial> a_prime;
    double growth_C = 0.0;
    int growth_m = 0;
    std::optional<double> theta_claimed;

    std::size_t n_components() const noexcept { return A.size(); }
    ScalarFlux component(std::size_t i) const { return ScalarFlux(A.at(i)); }
    /// a(xi) written into `out` (size N).
    void speed(double xi, std::span<double> out) const;
    /// max over components of |a_i| on the interval.
    double max_speed(Interval range) const;
};

/// Builds a flux from per-component polynomial coefficients of A. Growth constants
/// default to m = deg A'' and C = sum of |coefficients of A''|.
FluxSpec make_flux(std::string name, std::vector<std::vector<double>> coeffs,
                   std::optional<double> theta = std::nullopt);

/// A(xi) = xi^(l+1)/(l+1) in every one of `dim` components.
FluxSpec power_law(int l, std::size_t dim = 1);
/// A(xi) = xi^2.
FluxSpec burgers(std::size_t dim = 1);
/// A(xi) = (xi^(l+1)/(l+1), xi^(l+1)/(l+1)) on the 2-torus.
FluxSpec diagonal_power(int l);
/// One component per coefficient list, coefficients of A in increasing degree.
FluxSpec custom_poly(std::vector<std::vector<double>> coeffs);

/// Resolves a family name (`power_law`, `burgers`, `diagonal_power`, `custom_poly`).
/// For `custom_poly` in dimension N the parameter list is split into N equal chunks.
FluxSpec flux_by_name(std::string_view family, std::span<const double> params, std::size_t dim);

/// True iff |A''| <= C (1 + |xi|^m) at every sample of a uniform grid.
bool check_growth(const FluxSpec& flux, Interval xi_range, std::size_t samples);

}  // namespace sscl
