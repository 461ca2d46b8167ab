#pragma once

#include <span>
#include <string>
#include <vector>

#include "sscl/flux.hpp"

namespace sscl {

/// Which sublevel-set condition is being quantified: the componentwise product
/// |a(xi) sigma - z| with z in R^N, or the inner product |a(xi).sigma - z| with z in R.
enum class Condition { stochastic, deterministic };

/// Lebesgue measure of {xi : |a(xi) sigma - z| <= eps} (componentwise product,
/// Euclidean norm), counted on a uniform midpoint grid of `xi_samples` cells.
double measure_level_set_stochastic(const FluxSpec& flux, std::span<const double> sigma,
                                    std::span<const double> z, double eps, Interval xi_range,
                                    std::size_t xi_samples);

/// Lebesgue measure of {xi : |a(xi).sigma - z| <= eps}.
double measure_level_set_deterministic(const FluxSpec& flux, std::span<const double> sigma,
                                       double z, double eps, Interval xi_range,
                                       std::size_t xi_samples);

struct NonlinearityReport {
    double theta_hat = 0.0;   // fitted slope clamped to [0, 1]; 0 when degenerate
    double raw_slope = 0.0;
    std::vector<double> worst_direction;
    std::vector<double> worst_shift;
    double fit_residual = 0.0;  // RMS residual of the log-log fit
    bool degenerate = false;
    bool exceeds_smooth_bound = false;  // deterministic fit above 1/N + 0.1
    std::vector<double> eps;
    std::vector<double> sup_measure;
    std::vector<std::string> warnings;
};

struct ThetaOptions {
    Interval xi_range{-2.0, 2.0};
    std::vector<double> eps_grid;  // strictly decreasing, positive, >= 2 decades
    std::size_t direction_samples = 32;
    std::size_t shift_samples = 32;
    std::size_t xi_samples = 20000;
};

/// Decreasing geometric grid from eps_max down to eps_min.
std::vector<double> geometric_eps_grid(double eps_max, double eps_min, std::size_t count);

/// Supremum of the sublevel-set measure over sampled (sigma, z) for every eps,
/// followed by a least-squares fit of log(measure) against log(eps).
NonlinearityReport estimate_theta(const FluxSpec& flux, Condition condition, const ThetaOptions& options);

}  // namespace sscl
