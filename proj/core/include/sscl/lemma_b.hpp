#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace sscl {

struct LemmaBResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;
};

/// lhs = integral exp(-2 w^2 / a) |integral exp(i b(xi) w) f(xi) dxi|^2 dw, trapezoid in w
/// over `w_grid` and midpoint in xi over the cells between consecutive `xi_grid` nodes; rhs = 2 sqrt(a pi) integral_0^inf
/// tau exp(-tau^2) iota(2 tau / sqrt(a)) dtau ||f||_2^2. pass = lhs <= rhs (1 + 1e-3).
LemmaBResult verify_lemma_b(double a, const std::function<double(double)>& b,
                            const std::function<double(double)>& f,
                            const std::function<double(double)>& iota, std::span<const double> w_grid,
                            std::span<const double> xi_grid);

/// Uniform grid of `count` points on [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, std::size_t count);

/// Integration window [-W, W] for w with negligible Gaussian tail.
std::vector<double> default_w_grid(double a, std::size_t count = 2001);

struct LemmaBInstance {
    double a = 1.0;
    std::vector<double> b_coeffs;       // polynomial b, increasing degree
    std::vector<double> f_breaks;       // piecewise-constant f: breakpoints
    std::vector<double> f_values;       // values on each piece
    double iota_C = 0.0;                // iota(eps) = min(support, C eps^theta)
    double iota_theta = 1.0;
    double support = 0.0;
    LemmaBResult result;
};

/// Random polynomial b (degree 1 to 3) with the Polya sublevel bound as modulus and
/// random piecewise-constant f on a random interval.
LemmaBInstance random_lemma_b_instance(std::uint64_t seed, std::size_t index);

/// Evaluates an instance with grids fine enough for its phases.
LemmaBResult evaluate_instance(const LemmaBInstance& inst);

/// The closed-form case b(xi) = xi, iota = 2 eps, f = 1 on [0, 1], a = 1 (rhs = 2 pi).
LemmaBResult closed_form_lemma_b();

}  // namespace sscl
