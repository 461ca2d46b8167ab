#pragma once

#include <span>
#include <utility>
#include <vector>

#include "sscl/field.hpp"
#include "sscl/flux.hpp"

namespace sscl {

enum class NumericalFlux { godunov, engquist_osher };

/// min of A on [uL, uR] when uL <= uR, max on [uR, uL] otherwise.
double godunov_flux(const ScalarFlux& A, double u_left, double u_right) noexcept;
/// (A(uL) + A(uR) - integral_{uL}^{uR} |A'|) / 2 with an oriented integral.
double engquist_osher_flux(const ScalarFlux& A, double u_left, double u_right) noexcept;

/// Entropy solution of u_t + (u^2)_x = 0 with a single jump at x = 0.
double exact_riemann_burgers(double u_left, double u_right, double x, double t);

struct SweepOptions {
    double cfl = 0.45;
    NumericalFlux scheme = NumericalFlux::godunov;
};

/// Entropy dissipation of one sweep at the given xi values.
///
/// `per_bin[b]` is the Kruzkov decrease at centers[b]. When `cell_resolved` is set,
/// `cell[k * bins + b]` holds the per-cell share and `cell_moment` the same weighted
/// by the fraction of the sweep's pseudo-time elapsed at each sub-step midpoint.
struct DissipationSample {
    std::vector<double> centers;
    std::vector<double> per_bin;
    bool cell_resolved = false;
    std::vector<double> cell;
    std::vector<double> cell_moment;

    DissipationSample() = default;
    DissipationSample(std::vector<double> xi_centers, std::size_t cells, bool resolved);
    void reset();
};

/// In-place sweep along `axis` (0 = x1, 1 = x2) for a pseudo-time with flux `A`
/// (already carrying its sign). Sub-steps are chosen per grid line so that
/// ds * max|A'| / dx <= cfl. Adds to `sample` when given.
void sweep_1d(Field& u, std::size_t axis, const ScalarFlux& A, double pseudo_time,
              const SweepOptions& options = {}, DissipationSample* sample = nullptr);

/// Value-returning form; `sign` < 0 switches to -A.
std::pair<Field, DissipationSample> sweep_1d(const Field& u, std::size_t axis, const ScalarFlux& A,
                                             double sign, double pseudo_time, double cfl,
                                             std::span<const double> xi_centers = {});

/// Half sweep in x1, full sweep in x2, half sweep in x1 for the increment dbeta.
void strang_split_2d(Field& u, const FluxSpec& flux, std::span<const double> dbeta,
                     const SweepOptions& options = {}, DissipationSample* sample = nullptr);

std::pair<Field, DissipationSample> strang_split_2d(const Field& u, const FluxSpec& flux,
                                                    std::span<const double> dbeta, double cfl,
                                                    std::span<const double> xi_centers = {});

}  // namespace sscl
