#include "sscl/fv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sscl/error.hpp"
#include "sscl/kinetic.hpp"

namespace sscl {

double godunov_flux(const ScalarFlux& A, double u_left, double u_right) noexcept {
    return u_left <= u_right ? A.min_on(u_left, u_right) : A.max_on(u_right, u_left);
}

double engquist_osher_flux(const ScalarFlux& A, double u_left, double u_right) noexcept {
    const double tv = u_left <= u_right ? A.total_variation(u_left, u_right)
                                        : -A.total_variation(u_right, u_left);
    return 0.5 * (A.flux(u_left) + A.flux(u_right) - tv);
}

double exact_riemann_burgers(double u_left, double u_right, double x, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("exact Riemann solution needs t > 0");
    if (u_left > u_right) return x < (u_left + u_right) * t ? u_left : u_right;
    if (x <= 2.0 * u_left * t) return u_left;
    if (x >= 2.0 * u_right * t) return u_right;
    return x / (2.0 * t);
}

DissipationSample::DissipationSample(std::vector<double> xi_centers, std::size_t cells, bool resolved)
    : centers(std::move(xi_centers)), per_bin(centers.size(), 0.0), cell_resolved(resolved) {
    if (resolved) {
        cell.assign(cells * centers.size(), 0.0);
        cell_moment.assign(cells * centers.size(), 0.0);
    }
}

void DissipationSample::reset() {
    std::fill(per_bin.begin(), per_bin.end(), 0.0);
    std::fill(cell.begin(), cell.end(), 0.0);
    std::fill(cell_moment.begin(), cell_moment.end(), 0.0);
}

namespace {

template <class Flux>
void sweep_lines(Field& u, std::size_t axis, const ScalarFlux& A, double pseudo_time, double cfl,
                 DissipationSample* sample, Flux numerical) {
    const std::size_t nx = u.nx();
    const std::size_t ny = u.ny();
    const std::size_t n = axis == 0 ? nx : ny;
    const std::size_t lines = axis == 0 ? ny : nx;
    const std::size_t stride = axis == 0 ? 1 : nx;
    const double dx = 1.0 / static_cast<double>(n);
    const double vol = u.cell_volume();
    const bool resolved = sample != nullptr && sample->cell_resolved;
    const std::size_t bins = sample != nullptr ? sample->centers.size() : 0;

    std::vector<double> v(n), w(n), F(n);
    std::vector<double> G;
    if (resolved) G.resize(n);

    for (std::size_t line = 0; line < lines; ++line) {
        const std::size_t base = axis == 0 ? line * nx : line;
        for (std::size_t k = 0; k < n; ++k) v[k] = u[base + k * stride];
        const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
        const double speed = A.max_speed(*lo_it, *hi_it);
        if (speed == 0.0 || *lo_it == *hi_it) continue;
        const auto n_sub = static_cast<std::size_t>(std::ceil(pseudo_time * speed / (cfl * dx)));
        const double ds = pseudo_time / static_cast<double>(n_sub);
        const double lam = ds / dx;
        for (std::size_t s = 0; s < n_sub; ++s) {
            F[0] = numerical(A, v[n - 1], v[0]);
            for (std::size_t k = 1; k < n; ++k) F[k] = numerical(A, v[k - 1], v[k]);
            for (std::size_t k = 0; k + 1 < n; ++k) w[k] = v[k] - lam * (F[k + 1] - F[k]);
            w[n - 1] = v[n - 1] - lam * (F[0] - F[n - 1]);
            if (resolved) {
                const double frac = (static_cast<double>(s) + 0.5) / static_cast<double>(n_sub);
                for (std::size_t b = 0; b < bins; ++b) {
                    const double c = sample->centers[b];
                    auto entropy_flux = [&](double l, double r) {
                        return numerical(A, std::max(l, c), std::max(r, c)) -
                               numerical(A, std::min(l, c), std::min(r, c));
                    };
                    G[0] = entropy_flux(v[n - 1], v[0]);
                    for (std::size_t k = 1; k < n; ++k) G[k] = entropy_flux(v[k - 1], v[k]);
                    for (std::size_t k = 0; k < n; ++k) {
                        const double g_next = k + 1 < n ? G[k + 1] : G[0];
                        const double d = -0.5 * vol *
                                         (std::abs(w[k] - c) - std::abs(v[k] - c) + lam * (g_next - G[k]));
                        const std::size_t idx = (base + k * stride) * bins + b;
                        sample->cell[idx] += d;
                        sample->cell_moment[idx] += d * frac;
                    }
                }
            }
            std::swap(v, w);
        }
        for (std::size_t k = 0; k < n; ++k) u[base + k * stride] = v[k];
    }
}

}  // namespace

void sweep_1d(Field& u, std::size_t axis, const ScalarFlux& A, double pseudo_time,
              const SweepOptions& options, DissipationSample* sample) {
    if (axis >= u.dim()) throw std::invalid_argument("sweep axis exceeds field dimension");
    if (!(pseudo_time >= 0.0)) throw std::invalid_argument("pseudo-time must be nonnegative");
    if (!(options.cfl > 0.0 && options.cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
    if (!u.all_finite()) throw NumericalFailure("non-finite field entering sweep", 0.0);
    if (pseudo_time == 0.0) return;
    Field before;
    if (sample != nullptr) before = u;
    if (options.scheme == NumericalFlux::godunov) {
        sweep_lines(u, axis, A, pseudo_time, options.cfl, sample,
                    [](const ScalarFlux& f, double l, double r) { return godunov_flux(f, l, r); });
    } else {
        sweep_lines(u, axis, A, pseudo_time, options.cfl, sample,
                    [](const ScalarFlux& f, double l, double r) { return engquist_osher_flux(f, l, r); });
    }
    if (!u.all_finite()) throw NumericalFailure("non-finite field after sweep", 0.0);
    if (sample != nullptr && !sample->centers.empty()) {
        std::vector<double> inc(sample->centers.size());
        kruzkov_decrease(before, u, sample->centers, inc);
        for (std::size_t b = 0; b < inc.size(); ++b) sample->per_bin[b] += inc[b];
    }
}

std::pair<Field, DissipationSample> sweep_1d(const Field& u, std::size_t axis, const ScalarFlux& A,
                                             double sign, double pseudo_time, double cfl,
                                             std::span<const double> xi_centers) {
    Field out = u;
    DissipationSample sample({xi_centers.begin(), xi_centers.end()}, u.size(), false);
    const ScalarFlux f = sign < 0.0 ? A.negated() : A;
    sweep_1d(out, axis, f, pseudo_time, SweepOptions{cfl, NumericalFlux::godunov}, &sample);
    return {std::move(out), std::move(sample)};
}

void strang_split_2d(Field& u, const FluxSpec& flux, std::span<const double> dbeta,
                     const SweepOptions& options, DissipationSample* sample) {
    if (u.dim() != 2 || flux.n_components() != 2 || dbeta.size() != 2)
        throw std::invalid_argument("strang splitting needs a 2D field, flux and increment");
    const ScalarFlux f1 = dbeta[0] < 0.0 ? flux.component(0).negated() : flux.component(0);
    const ScalarFlux f2 = dbeta[1] < 0.0 ? flux.component(1).negated() : flux.component(1);
    const double h1 = 0.5 * std::abs(dbeta[0]);
    sweep_1d(u, 0, f1, h1, options, sample);
    sweep_1d(u, 1, f2, std::abs(dbeta[1]), options, sample);
    sweep_1d(u, 0, f1, h1, options, sample);
}

std::pair<Field, DissipationSample> strang_split_2d(const Field& u, const FluxSpec& flux,
                                                    std::span<const double> dbeta, double cfl,
                                                    std::span<const double> xi_centers) {
    Field out = u;
    DissipationSample sample({xi_centers.begin(), xi_centers.end()}, u.size(), false);
    strang_split_2d(out, flux, dbeta, SweepOptions{cfl, NumericalFlux::godunov}, &sample);
    return {std::move(out), std::move(sample)};
}

}  // namespace sscl
