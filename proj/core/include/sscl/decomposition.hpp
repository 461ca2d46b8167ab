#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "sscl/fft.hpp"
#include "sscl/field.hpp"
#include "sscl/flux.hpp"
#include "sscl/kinetic.hpp"
#include "sscl/paths.hpp"
#include "sscl/pathwise.hpp"

namespace sscl {

/// gamma ((-Laplace)^alpha + Id) with symbol omega_n = gamma (|n|^(2 alpha) + 1).
struct RegularizerSpec {
    double gamma = 1.0;
    double alpha = 0.5;

    double omega(double n_magnitude) const;
    /// (lambda + 1) / (2 alpha).
    double mu(double lambda) const { return (lambda + 1.0) / (2.0 * alpha); }
    void validate() const;
};

using Mode = std::array<long, 2>;

/// Fourier coefficients of the bin-averaged chi(u, .) for every xi bin.
struct ChiSpectrum {
    XiGrid grid;
    std::vector<SpectralField> bins;  // one spectrum per xi bin

    static ChiSpectrum of(const Field& u, const XiGrid& grid);
    /// sum_k h chi^(n, c_k) exp(-2 pi i n . (a(c_k) o shift)).
    std::complex<double> transported(const FluxSpec& flux, const Mode& n, std::span<const double> shift) const;
};

/// Every lattice mode of the grid, in storage order.
std::vector<Mode> all_modes(const Field& shape);

/// u0^(n, t) = exp(-omega_n t) integral exp(-2 pi i n . a(xi) beta(t)) chi0^(n, xi) dxi.
std::complex<double> u0_mode(const ChiSpectrum& chi0, const FluxSpec& flux, const DrivingPath& path,
                             const RegularizerSpec& reg, double t, const Mode& n);
SpectralField u0_component(const ChiSpectrum& chi0, const FluxSpec& flux, const DrivingPath& path,
                           const RegularizerSpec& reg, double t);

/// Time-indexed chi spectra; times increasing from 0.
struct ChiTrace {
    std::vector<double> times;
    std::vector<ChiSpectrum> spectra;
};

/// u1^(n, t) by composite trapezoid over the trace times s_j <= t (the last equal to t).
/// Throws when the spacing exceeds 1 / (8 omega_max) over the evaluated modes.
std::vector<std::complex<double>> u1_modes(const ChiTrace& trace, const FluxSpec& flux,
                                           const DrivingPath& path, const RegularizerSpec& reg, double t,
                                           const std::vector<Mode>& modes);
SpectralField u1_component(const ChiTrace& trace, const FluxSpec& flux, const DrivingPath& path,
                           const RegularizerSpec& reg, double t, const Field& shape);

/// Q^(n, t) from a cell-resolved ledger, each (bucket, cell, bin) mass placed at its time centroid.
std::complex<double> q_mode(const SolveRecord& record, const FluxSpec& flux, const DrivingPath& path,
                            const RegularizerSpec& reg, double t, const Mode& n);

struct SplitTerm {
    Mode mode{};
    std::complex<double> u;
    std::complex<double> u0;
    std::complex<double> u1;
    std::complex<double> q;
    double defect = 0.0;  // |u - u0 - u1 - q|
};

/// Per-mode defect of u = u0 + u1 + Q at a recorded time t. Needs snapshots and a
/// cell-resolved ledger in the record.
std::vector<SplitTerm> verify_split(const SolveRecord& record, const FluxSpec& flux, const DrivingPath& path,
                                    const RegularizerSpec& reg, double t, const std::vector<Mode>& modes);

struct ScalingReport {
    std::vector<double> gammas;
    std::vector<double> energy;
    std::vector<double> stderr_;
    double slope = 0.0;
    double intercept = 0.0;
    double bound_exponent = 0.0;   // -(2 - theta) / 2
    double envelope_constant = 0.0;
    double worst_ratio = 0.0;      // max energy / (constant gamma^bound_exponent)
    bool degenerate = false;
};

struct ScalingOptions {
    std::vector<double> gammas{1.0, 2.0, 4.0, 8.0};
    double alpha = 0.5;
    double horizon = 1.0;
    std::size_t mc_paths = 32;
    std::size_t path_segments = 1024;
    std::size_t xi_bins = 64;
    std::uint64_t base_seed = 1;
    std::size_t threads = 1;
    /// Hold beta at 0 instead of sampling paths (closed-form comparisons).
    bool frozen_path = false;
};

/// E integral_0^T ||u0(t)||_2^2 dt per gamma, Monte Carlo over Brownian paths, and the
/// log-log fit against gamma. Each panel integrates exp(-2 omega t) against the linear
/// interpolant of |phase sum|^2 exactly.
ScalingReport u0_energy_scaling(const FluxSpec& flux, double theta, const Field& u0, const ScalingOptions& options);

}  // namespace sscl
