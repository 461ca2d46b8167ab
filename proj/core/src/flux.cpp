#include "sscl/flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sscl {

ScalarFlux::ScalarFlux(Polynomial A, double sign)
    : A_(std::move(A)), a_(A_.derivative()), sign_(sign) {
    flux_critical_ = a_.real_roots();
    speed_critical_ = a_.derivative().real_roots();
}

ScalarFlux ScalarFlux::negated() const {
    ScalarFlux f = *this;
    f.sign_ = -sign_;
    return f;
}

double ScalarFlux::min_on(double lo, double hi) const noexcept {
    double m = std::min(flux(lo), flux(hi));
    for (double c : flux_critical_)
        if (c > lo && c < hi) m = std::min(m, flux(c));
    return m;
}

double ScalarFlux::max_on(double lo, double hi) const noexcept {
    double m = std::max(flux(lo), flux(hi));
    for (double c : flux_critical_)
        if (c > lo && c < hi) m = std::max(m, flux(c));
    return m;
}

double ScalarFlux::max_speed(double lo, double hi) const noexcept {
    double m = std::max(std::abs(a_(lo)), std::abs(a_(hi)));
    for (double c : speed_critical_)
        if (c > lo && c < hi) m = std::max(m, std::abs(a_(c)));
    return m;
}

double ScalarFlux::total_variation(double lo, double hi) const noexcept {
    double tv = 0.0;
    double prev = lo;
    double fprev = A_(lo);
    for (double c : flux_critical_) {
        if (c <= lo || c >= hi) continue;
        const double fc = A_(c);
        tv += std::abs(fc - fprev);
        prev = c;
        fprev = fc;
    }
    tv += std::abs(A_(hi) - fprev);
    (void)prev;
    return tv;
}

void FluxSpec::speed(double xi, std::span<double> out) const {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i](xi);
}

double FluxSpec::max_speed(Interval range) const {
    double m = 0.0;
    for (const auto& Ai : A) m = std::max(m, ScalarFlux(Ai).max_speed(range.lo, range.hi));
    return m;
}

FluxSpec make_flux(std::string name, std::vector<std::vector<double>> coeffs,
                   std::optional<double> theta) {
    if (coeffs.empty()) throw std::invalid_argument("flux needs at least one component");
    FluxSpec f;
    f.name = std::move(name);
    f.theta_claimed = theta;
    if (theta && !(*theta > 0.0 && *theta <= 1.0))
        throw std::invalid_argument("claimed nonlinearity exponent must lie in (0, 1]");
    double C = 0.0;
    int m = 0;
    for (auto& c : coeffs) {
        Polynomial A(std::move(c));
        Polynomial a = A.derivative();
        Polynomial ap = a.derivative();
        double s = 0.0;
        for (double x : ap.coeffs()) s += std::abs(x);
        C = std::max(C, s);
        m = std::max(m, std::max(ap.degree(), 0));
        f.A.push_back(std::move(A));
        f.a.push_back(std::move(a));
        f.a_prime.push_back(std::move(ap));
    }
    f.growth_C = C > 0.0 ? C : 1.0;
    f.growth_m = m;
    return f;
}

FluxSpec power_law(int l, std::size_t dim) {
    if (l < 1) throw std::invalid_argument("power_law exponent must be >= 1");
    std::vector<double> c(static_cast<std::size_t>(l) + 2, 0.0);
    c.back() = 1.0 / static_cast<double>(l + 1);
    return make_flux("power_law(" + std::to_string(l) + ")",
                     std::vector<std::vector<double>>(dim, c), 1.0 / l);
}

FluxSpec burgers(std::size_t dim) {
    return make_flux("burgers", std::vector<std::vector<double>>(dim, {0.0, 0.0, 1.0}), 1.0);
}

FluxSpec diagonal_power(int l) {
    FluxSpec f = power_law(l, 2);
    f.name = "diagonal_power(" + std::to_string(l) + ")";
    return f;
}

FluxSpec custom_poly(std::vector<std::vector<double>> coeffs) {
    return make_flux("custom_poly", std::move(coeffs));
}

FluxSpec flux_by_name(std::string_view family, std::span<const double> params, std::size_t dim) {
    auto int_param = [&](std::size_t k) {
        if (params.size() <= k) throw std::invalid_argument("flux '" + std::string(family) + "' needs a parameter");
        const double v = params[k];
        if (v != std::floor(v)) throw std::invalid_argument("flux exponent must be an integer");
        return static_cast<int>(v);
    };
    if (family == "power_law") return power_law(int_param(0), dim);
    if (family == "burgers") return burgers(dim);
    if (family == "diagonal_power") {
        if (dim != 2) throw std::invalid_argument("diagonal_power is defined on the 2-torus");
        return diagonal_power(int_param(0));
    }
    if (family == "custom_poly") {
        if (params.empty() || params.size() % dim != 0)
            throw std::invalid_argument("custom_poly needs a coefficient list per component");
        const std::size_t k = params.size() / dim;
        std::vector<std::vector<double>> c(dim);
        for (std::size_t i = 0; i < dim; ++i) c[i].assign(params.begin() + i * k, params.begin() + (i + 1) * k);
        return custom_poly(std::move(c));
    }
    throw std::invalid_argument("unknown flux family '" + std::string(family) + "'");
}

bool check_growth(const FluxSpec& flux, Interval xi_range, std::size_t samples) {
    if (samples < 1000) throw std::invalid_argument("check_growth needs at least 1000 samples");
    for (std::size_t j = 0; j < samples; ++j) {
        const double xi = xi_range.lo + xi_range.length() * static_cast<double>(j) / static_cast<double>(samples - 1);
        const double bound = flux.growth_C * (1.0 + std::pow(std::abs(xi), flux.growth_m));
        for (const auto& ap : flux.a_prime)
            if (std::abs(ap(xi)) > bound * (1.0 + 1e-14)) return false;
    }
    return true;
}

}  // namespace sscl
