#include "sscl/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sscl/parallel.hpp"
#include "sscl/rng.hpp"
#include "sscl/stats.hpp"

namespace sscl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::complex<double> kI{0.0, 1.0};

double mode_norm(const Mode& n) {
    return std::hypot(static_cast<double>(n[0]), static_cast<double>(n[1]));
}

// n . (v o w) over the flux components.
double dot_product(const Mode& n, std::span<const double> v, std::span<const double> w) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += static_cast<double>(n[i]) * v[i] * w[i];
    return s;
}

std::size_t time_index(std::span<const double> times, double t) {
    for (std::size_t k = 0; k < times.size(); ++k)
        if (std::abs(times[k] - t) <= 1e-12 * std::max(1.0, t)) return k;
    throw std::invalid_argument("requested time is not a recorded instant");
}

std::vector<double> increment(const DrivingPath& path, double s, double t) {
    std::vector<double> d(path.n_components());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = path.value(t, i) - path.value(s, i);
    return d;
}

}  // namespace

double RegularizerSpec::omega(double n_magnitude) const {
    return gamma * (std::pow(n_magnitude, 2.0 * alpha) + 1.0);
}

void RegularizerSpec::validate() const {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
}

ChiSpectrum ChiSpectrum::of(const Field& u, const XiGrid& grid) {
    const auto chi = chi_field_binned(u, grid);
    ChiSpectrum s;
    s.grid = grid;
    Field column = u;
    for (std::size_t b = 0; b < grid.bins; ++b) {
        for (std::size_t k = 0; k < u.size(); ++k) column[k] = chi[k * grid.bins + b];
        s.bins.push_back(SpectralField::from_field(column));
    }
    return s;
}

std::complex<double> ChiSpectrum::transported(const FluxSpec& flux, const Mode& n,
                                              std::span<const double> shift) const {
    const std::size_t N = flux.n_components();
    std::vector<double> a(N);
    std::complex<double> sum = 0.0;
    for (std::size_t k = 0; k < bins.size(); ++k) {
        const std::complex<double> c = bins[k].mode(n[0], n[1]);
        if (c == 0.0) continue;
        flux.speed(grid.center(k), a);
        sum += c * std::polar(1.0, -kTwoPi * dot_product(n, a, shift));
    }
    return sum * grid.width();
}

std::vector<Mode> all_modes(const Field& shape) {
    std::vector<Mode> modes;
    for (std::size_t k = 0; k < shape.size(); ++k) {
        const long n1 = frequency(k % shape.nx(), shape.nx());
        const long n2 = shape.dim() == 1 ? 0 : frequency(k / shape.nx(), shape.ny());
        modes.push_back({n1, n2});
    }
    return modes;
}

std::complex<double> u0_mode(const ChiSpectrum& chi0, const FluxSpec& flux, const DrivingPath& path,
                             const RegularizerSpec& reg, double t, const Mode& n) {
    reg.validate();
    const auto shift = increment(path, 0.0, t);
    return std::exp(-reg.omega(mode_norm(n)) * t) * chi0.transported(flux, n, shift);
}

SpectralField u0_component(const ChiSpectrum& chi0, const FluxSpec& flux, const DrivingPath& path,
                           const RegularizerSpec& reg, double t) {
    const SpectralField& shape = chi0.bins.front();
    SpectralField out(shape.nx(), shape.dim() == 1 ? 0 : shape.ny());
    for (std::size_t k = 0; k < out.size(); ++k) {
        const auto [n1, n2] = out.frequencies(k);
        out[k] = u0_mode(chi0, flux, path, reg, t, {n1, n2});
    }
    return out;
}

std::vector<std::complex<double>> u1_modes(const ChiTrace& trace, const FluxSpec& flux,
                                           const DrivingPath& path, const RegularizerSpec& reg, double t,
                                           const std::vector<Mode>& modes) {
    reg.validate();
    if (trace.times.size() != trace.spectra.size() || trace.times.empty() || trace.times.front() != 0.0)
        throw std::invalid_argument("chi trace must start at t = 0");
    std::vector<std::complex<double>> out(modes.size(), 0.0);
    if (t == 0.0) return out;
    const std::size_t K = time_index(trace.times, t);
    double omega_max = 0.0;
    for (const auto& n : modes) omega_max = std::max(omega_max, reg.omega(mode_norm(n)));
    for (std::size_t j = 1; j <= K; ++j)
        if (trace.times[j] - trace.times[j - 1] > (1.0 + 1e-9) / (8.0 * omega_max))
            throw std::invalid_argument("snapshot spacing too coarse for the evaluated modes");
    for (std::size_t m = 0; m < modes.size(); ++m) {
        const double om = reg.omega(mode_norm(modes[m]));
        std::complex<double> sum = 0.0;
        for (std::size_t j = 0; j <= K; ++j) {
            const double left = j > 0 ? trace.times[j] - trace.times[j - 1] : 0.0;
            const double right = j < K ? trace.times[j + 1] - trace.times[j] : 0.0;
            const double w = 0.5 * (left + right);
            const double s = trace.times[j];
            sum += w * om * std::exp(-om * (t - s)) *
                   trace.spectra[j].transported(flux, modes[m], increment(path, s, t));
        }
        out[m] = sum;
    }
    return out;
}

SpectralField u1_component(const ChiTrace& trace, const FluxSpec& flux, const DrivingPath& path,
                           const RegularizerSpec& reg, double t, const Field& shape) {
    const auto modes = all_modes(shape);
    const auto vals = u1_modes(trace, flux, path, reg, t, modes);
    SpectralField out(shape.nx(), shape.dim() == 1 ? 0 : shape.ny());
    for (std::size_t k = 0; k < modes.size(); ++k) out.mode(modes[k][0], modes[k][1]) = vals[k];
    return out;
}

std::complex<double> q_mode(const SolveRecord& record, const FluxSpec& flux, const DrivingPath& path,
                            const RegularizerSpec& reg, double t, const Mode& n) {
    reg.validate();
    const KineticLedger& L = record.ledger;
    if (!L.cell_resolved()) throw std::invalid_argument("Q needs a cell-resolved ledger");
    const std::size_t K = time_index(record.times, t);
    const Field& shape = record.initial;
    const std::size_t N = flux.n_components();
    const std::size_t B = L.bins();
    const double om = reg.omega(mode_norm(n));
    const double beta_t0 = path.value(t, 0);
    const double beta_t1 = N > 1 ? path.value(t, 1) : 0.0;

    std::vector<std::complex<double>> cell_phase(shape.size());
    for (std::size_t k = 0; k < shape.size(); ++k) {
        const double x1 = static_cast<double>(k % shape.nx()) / static_cast<double>(shape.nx());
        const double x2 = static_cast<double>(k / shape.nx()) / static_cast<double>(shape.ny());
        cell_phase[k] = std::polar(1.0, -kTwoPi * (static_cast<double>(n[0]) * x1 + static_cast<double>(n[1]) * x2));
    }
    std::vector<double> a(N), ap(N), db(N);
    std::complex<double> sum = 0.0;
    for (std::size_t bucket = 0; bucket < K; ++bucket) {
        const auto mass = L.cell_mass(bucket);
        const auto moment = L.cell_time_moment(bucket);
        const double s_lo = record.times[bucket];
        const double s_hi = record.times[bucket + 1];
        for (std::size_t b = 0; b < B; ++b) {
            const double c = L.grid().center(b);
            flux.speed(c, a);
            for (std::size_t i = 0; i < N; ++i) ap[i] = flux.a_prime[i](c);
            for (std::size_t k = 0; k < shape.size(); ++k) {
                const double M = mass[k * B + b];
                if (M == 0.0) continue;
                const double s = std::clamp(moment[k * B + b] / M, s_lo, s_hi);
                db[0] = beta_t0 - path.value(s, 0);
                if (N > 1) db[1] = beta_t1 - path.value(s, 1);
                const double phase = -kTwoPi * dot_product(n, a, db);
                sum += M * kI * kTwoPi * dot_product(n, ap, db) * std::exp(-om * (t - s)) *
                       std::polar(1.0, phase) * cell_phase[k];
            }
        }
    }
    return sum;
}

std::vector<SplitTerm> verify_split(const SolveRecord& record, const FluxSpec& flux, const DrivingPath& path,
                                    const RegularizerSpec& reg, double t, const std::vector<Mode>& modes) {
    if (!record.ledger.cell_resolved()) throw std::invalid_argument("split verifier needs a cell-resolved ledger");
    if (record.snapshots.size() != record.times.size())
        throw std::invalid_argument("split verifier needs a snapshot at every recorded time");
    const std::size_t K = time_index(record.times, t);
    const XiGrid& grid = record.ledger.grid();
    ChiTrace trace;
    for (std::size_t j = 0; j <= K; ++j) {
        trace.times.push_back(record.times[j]);
        trace.spectra.push_back(ChiSpectrum::of(record.snapshots[j], grid));
    }
    const SpectralField u_hat = SpectralField::from_field(record.snapshots[K]);
    const auto u1 = u1_modes(trace, flux, path, reg, record.times[K], modes);
    std::vector<SplitTerm> out;
    for (std::size_t m = 0; m < modes.size(); ++m) {
        SplitTerm term;
        term.mode = modes[m];
        term.u = u_hat.mode(modes[m][0], modes[m][1]);
        term.u0 = u0_mode(trace.spectra.front(), flux, path, reg, record.times[K], modes[m]);
        term.u1 = u1[m];
        term.q = K == 0 ? 0.0 : q_mode(record, flux, path, reg, record.times[K], modes[m]);
        term.defect = std::abs(term.u - term.u0 - term.u1 - term.q);
        out.push_back(term);
    }
    return out;
}

ScalingReport u0_energy_scaling(const FluxSpec& flux, double theta, const Field& u0, const ScalingOptions& opt) {
    if (opt.gammas.size() < 4) throw std::invalid_argument("scaling study needs at least 4 gamma values");
    const auto [gmin, gmax] = std::minmax_element(opt.gammas.begin(), opt.gammas.end());
    if (*gmax / *gmin < 8.0 - 1e-12) throw std::invalid_argument("gamma values must span a factor of at least 8");
    if (opt.mc_paths < 32 && !opt.frozen_path) throw std::invalid_argument("scaling study needs >= 32 paths");
    for (double g : opt.gammas) RegularizerSpec{g, opt.alpha}.validate();
    if (u0.dim() != flux.n_components()) throw std::invalid_argument("flux and data dimensions differ");

    const XiGrid grid = XiGrid::covering(u0.linf(), opt.xi_bins);
    const ChiSpectrum chi0 = ChiSpectrum::of(u0, grid);
    const auto modes = all_modes(u0);
    const std::size_t G = opt.gammas.size();
    const std::size_t P = opt.frozen_path ? 1 : opt.mc_paths;
    const std::size_t N = flux.n_components();

    std::vector<std::vector<double>> per_path(P, std::vector<double>(G, 0.0));
    parallel_for(P, opt.threads, [&](std::size_t p) {
        const std::uint64_t seed = rng::derive(opt.base_seed, p);
        const DrivingPath path = opt.frozen_path
            ? DrivingPath::from_breakpoints({0.0, opt.horizon}, std::vector<double>(2 * N, 0.0), N,
                                            DrivingPath::Kind::deterministic)
                  .refine(static_cast<int>(std::ceil(std::log2(static_cast<double>(opt.path_segments)))))
            : DrivingPath::sample_brownian(seed, N, opt.horizon, opt.path_segments);
        const auto times = path.times();
        std::vector<double> f(times.size());
        std::vector<double> shift(N);
        for (const auto& n : modes) {
            bool empty = true;
            for (const auto& spec : chi0.bins)
                if (spec.mode(n[0], n[1]) != 0.0) empty = false;
            if (empty) continue;
            for (std::size_t j = 0; j < times.size(); ++j) {
                for (std::size_t i = 0; i < N; ++i) shift[i] = path.breakpoint_value(j, i);
                f[j] = std::norm(chi0.transported(flux, n, shift));
            }
            for (std::size_t g = 0; g < G; ++g) {
                const double kappa = 2.0 * RegularizerSpec{opt.gammas[g], opt.alpha}.omega(mode_norm(n));
                double integral = 0.0;
                for (std::size_t j = 0; j + 1 < times.size(); ++j) {
                    const double d = times[j + 1] - times[j];
                    const double x = kappa * d;
                    const double e0 = std::exp(-kappa * times[j]);
                    const double flat = e0 * -std::expm1(-x) / kappa;
                    const double ramp = e0 * (-std::expm1(-x) - x * std::exp(-x)) / (kappa * kappa);
                    integral += f[j] * flat + (f[j + 1] - f[j]) / d * ramp;
                }
                per_path[p][g] += integral;
            }
        }
    });

    ScalingReport rep;
    rep.gammas = opt.gammas;
    rep.bound_exponent = -(2.0 - theta) / 2.0;
    for (std::size_t g = 0; g < G; ++g) {
        double mean = 0.0;
        for (std::size_t p = 0; p < P; ++p) mean += per_path[p][g];
        mean /= static_cast<double>(P);
        double var = 0.0;
        for (std::size_t p = 0; p < P; ++p) var += (per_path[p][g] - mean) * (per_path[p][g] - mean);
        const double se = P > 1 ? std::sqrt(var / static_cast<double>(P - 1) / static_cast<double>(P)) : 0.0;
        rep.energy.push_back(mean);
        rep.stderr_.push_back(se);
        if (!(mean > 0.0)) rep.degenerate = true;
    }
    if (rep.degenerate) return rep;
    std::vector<double> lx, ly;
    double log_c = 0.0;
    for (std::size_t g = 0; g < G; ++g) {
        lx.push_back(std::log(rep.gammas[g]));
        ly.push_back(std::log(rep.energy[g]));
        log_c += ly.back() - rep.bound_exponent * lx.back();
    }
    const LinearFit fit = least_squares(lx, ly);
    rep.slope = fit.slope;
    rep.intercept = fit.intercept;
    rep.envelope_constant = std::exp(log_c / static_cast<double>(G));
    for (std::size_t g = 0; g < G; ++g)
        rep.worst_ratio = std::max(rep.worst_ratio,
                                   rep.energy[g] / (rep.envelope_constant * std::pow(rep.gammas[g], rep.bound_exponent)));
    return rep;
}

}  // namespace sscl
