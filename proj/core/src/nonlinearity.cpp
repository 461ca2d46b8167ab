#include "sscl/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "sscl/stats.hpp"

namespace sscl {

namespace {

void require_unit(std::span<const double> sigma, std::size_t n) {
    if (sigma.size() != n) throw std::invalid_argument("direction has wrong dimension");
    double s = 0.0;
    for (double v : sigma) s += v * v;
    if (std::abs(std::sqrt(s) - 1.0) > 1e-12) throw std::invalid_argument("direction must be a unit vector");
}

void require_grid(double eps, Interval range, std::size_t samples) {
    if (!(eps >= 0.0)) throw std::invalid_argument("eps must be nonnegative");
    if (!(range.hi > range.lo)) throw std::invalid_argument("empty xi range");
    if (samples < 1000) throw std::invalid_argument("need at least 1000 xi samples");
}

double node(Interval r, std::size_t j, std::size_t n) {
    return r.lo + (static_cast<double>(j) + 0.5) * r.length() / static_cast<double>(n);
}

// Radical inverse in the given base (Halton coordinate).
double halton(std::size_t index, std::size_t base) {
    double f = 1.0;
    double r = 0.0;
    std::size_t i = index + 1;
    while (i > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

constexpr std::size_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

std::vector<std::vector<double>> sample_directions(std::size_t n, std::size_t count) {
    std::vector<std::vector<double>> dirs;
    if (n == 1) return {{1.0}, {-1.0}};
    if (n == 2) {
        for (std::size_t k = 0; k < count; ++k) {
            const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
            dirs.push_back({std::cos(phi), std::sin(phi)});
        }
        return dirs;
    }
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<double> v(n);
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            // inverse-CDF free Gaussian surrogate: Box-Muller on paired Halton coordinates
            const double u1 = halton(k, kPrimes[(2 * i) % 8]);
            const double u2 = halton(k, kPrimes[(2 * i + 1) % 8]);
            v[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
            norm += v[i] * v[i];
        }
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
        dirs.push_back(std::move(v));
    }
    return dirs;
}

// Largest number of sorted values inside any window of width 2 eps, plus the
// window centre. Exact supremum over scalar shifts.
std::pair<std::size_t, double> best_window(const std::vector<double>& sorted, double eps) {
    std::size_t best = 0;
    double centre = sorted.empty() ? 0.0 : sorted.front();
    std::size_t lo = 0;
    for (std::size_t hi = 0; hi < sorted.size(); ++hi) {
        while (sorted[hi] - sorted[lo] > 2.0 * eps) ++lo;
        if (hi - lo + 1 > best) {
            best = hi - lo + 1;
            centre = 0.5 * (sorted[hi] + sorted[lo]);
        }
    }
    return {best, centre};
}

}  // namespace

double measure_level_set_stochastic(const FluxSpec& flux, std::span<const double> sigma,
                                    std::span<const double> z, double eps, Interval xi_range,
                                    std::size_t xi_samples) {
    const std::size_t n = flux.n_components();
    require_unit(sigma, n);
    if (z.size() != n) throw std::invalid_argument("shift has wrong dimension");
    require_grid(eps, xi_range, xi_samples);
    std::size_t count = 0;
    const double eps2 = eps * eps;
    for (std::size_t j = 0; j < xi_samples; ++j) {
        const double xi = node(xi_range, j, xi_samples);
        double d2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = flux.a[i](xi) * sigma[i] - z[i];
            d2 += r * r;
        }
        if (d2 <= eps2) ++count;
    }
    return static_cast<double>(count) * xi_range.length() / static_cast<double>(xi_samples);
}

double measure_level_set_deterministic(const FluxSpec& flux, std::span<const double> sigma, double z,
                                       double eps, Interval xi_range, std::size_t xi_samples) {
    const std::size_t n = flux.n_components();
    require_unit(sigma, n);
    require_grid(eps, xi_range, xi_samples);
    std::size_t count = 0;
    for (std::size_t j = 0; j < xi_samples; ++j) {
        const double xi = node(xi_range, j, xi_samples);
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += flux.a[i](xi) * sigma[i];
        if (std::abs(dot - z) <= eps) ++count;
    }
    return static_cast<double>(count) * xi_range.length() / static_cast<double>(xi_samples);
}

std::vector<double> geometric_eps_grid(double eps_max, double eps_min, std::size_t count) {
    if (count < 2 || !(eps_max > eps_min) || !(eps_min > 0.0))
        throw std::invalid_argument("bad eps grid specification");
    std::vector<double> g(count);
    const double r = std::log(eps_min / eps_max) / static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) g[k] = eps_max * std::exp(r * static_cast<double>(k));
    return g;
}

NonlinearityReport estimate_theta(const FluxSpec& flux, Condition condition, const ThetaOptions& opt) {
    const auto& eps = opt.eps_grid;
    if (eps.size() < 3) throw std::invalid_argument("estimate_theta needs at least 3 eps values");
    for (std::size_t k = 0; k < eps.size(); ++k) {
        if (!(eps[k] > 0.0)) throw std::invalid_argument("eps values must be positive");
        if (k > 0 && !(eps[k] < eps[k - 1])) throw std::invalid_argument("eps grid must be decreasing");
    }
    if (eps.front() / eps.back() < 100.0 * (1.0 - 1e-9))
        throw std::invalid_argument("eps grid must span at least two decades");
    if (opt.direction_samples < 32 || opt.shift_samples < 32)
        throw std::invalid_argument("need at least 32 direction and shift samples");
    require_grid(eps.back(), opt.xi_range, opt.xi_samples);

    const std::size_t n = flux.n_components();
    const std::size_t ns = opt.xi_samples;
    const double cell = opt.xi_range.length() / static_cast<double>(ns);

    std::vector<double> table(ns * n);
    for (std::size_t j = 0; j < ns; ++j)
        for (std::size_t i = 0; i < n; ++i) table[j * n + i] = flux.a[i](node(opt.xi_range, j, ns));

    // Special abscissae: range ends and critical points of every component of a.
    std::vector<double> special{opt.xi_range.lo, opt.xi_range.hi};
    for (const auto& ap : flux.a_prime)
        for (double r : ap.real_roots(opt.xi_range.lo, opt.xi_range.hi)) special.push_back(r);

    const double zmax = flux.max_speed(opt.xi_range) + 1.0;
    const auto dirs = sample_directions(n, opt.direction_samples);

    NonlinearityReport rep;
    rep.eps = eps;
    rep.sup_measure.assign(eps.size(), 0.0);
    std::vector<std::vector<double>> best_dir(eps.size()), best_shift(eps.size());

    const bool scalar = condition == Condition::deterministic || n == 1;
    std::vector<double> g(scalar ? ns : ns * n);

    for (const auto& sigma : dirs) {
        if (scalar) {
            for (std::size_t j = 0; j < ns; ++j) {
                double v = 0.0;
                for (std::size_t i = 0; i < n; ++i) v += table[j * n + i] * sigma[i];
                g[j] = v;
            }
            std::sort(g.begin(), g.end());
            for (std::size_t k = 0; k < eps.size(); ++k) {
                const auto [count, centre] = best_window(g, eps[k]);
                const double m = static_cast<double>(count) * cell;
                if (m > rep.sup_measure[k]) {
                    rep.sup_measure[k] = m;
                    best_dir[k] = sigma;
                    best_shift[k] = {centre};
                }
            }
            continue;
        }

        // Vector shifts: curve points in R^N, sup over z approximated by candidates.
        for (std::size_t j = 0; j < ns; ++j)
            for (std::size_t i = 0; i < n; ++i) g[j * n + i] = table[j * n + i] * sigma[i];

        auto count_ball = [&](const std::vector<double>& z, double e) {
            const double e2 = e * e;
            std::size_t c = 0;
            for (std::size_t j = 0; j < ns; ++j) {
                double d2 = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double r = g[j * n + i] - z[i];
                    d2 += r * r;
                }
                if (d2 <= e2) ++c;
            }
            return c;
        };

        std::vector<std::vector<double>> candidates;
        for (std::size_t s = 0; s < opt.shift_samples; ++s) {
            std::vector<double> z(n);
            for (std::size_t i = 0; i < n; ++i) z[i] = -zmax + 2.0 * zmax * halton(s, kPrimes[i % 8]);
            candidates.push_back(std::move(z));
        }
        for (double xi : special) {
            std::vector<double> z(n);
            for (std::size_t i = 0; i < n; ++i) z[i] = flux.a[i](xi) * sigma[i];
            candidates.push_back(std::move(z));
        }
        constexpr std::size_t kCurvePoints = 64;
        for (std::size_t c = 0; c < kCurvePoints; ++c) {
            const std::size_t j = (2 * c + 1) * ns / (2 * kCurvePoints);
            candidates.emplace_back(g.begin() + static_cast<std::ptrdiff_t>(j * n),
                                    g.begin() + static_cast<std::ptrdiff_t>((j + 1) * n));
        }

        for (std::size_t k = 0; k < eps.size(); ++k) {
            std::size_t best = 0;
            std::vector<double> zbest = candidates.front();
            for (const auto& z : candidates) {
                const std::size_t c = count_ball(z, eps[k]);
                if (c > best) {
                    best = c;
                    zbest = z;
                }
            }
            // Coordinate pattern search around the best candidate.
            for (double step = eps[k]; step > eps[k] / 8.0; step *= 0.5) {
                bool improved = true;
                while (improved) {
                    improved = false;
                    for (std::size_t i = 0; i < n; ++i)
                        for (double dir : {-1.0, 1.0}) {
                            auto z = zbest;
                            z[i] += dir * step;
                            const std::size_t c = count_ball(z, eps[k]);
                            if (c > best) {
                                best = c;
                                zbest = std::move(z);
                                improved = true;
                            }
                        }
                }
            }
            const double m = static_cast<double>(best) * cell;
            if (m > rep.sup_measure[k]) {
                rep.sup_measure[k] = m;
                best_dir[k] = sigma;
                best_shift[k] = zbest;
            }
        }
    }

    rep.worst_direction = best_dir.back();
    rep.worst_shift = best_shift.back();

    for (double m : rep.sup_measure)
        if (m > 0.9 * opt.xi_range.length()) rep.degenerate = true;
    if (rep.degenerate) {
        rep.theta_hat = 0.0;
        rep.warnings.push_back("sublevel-set measure saturates the xi range; flux is degenerate");
        return rep;
    }
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < eps.size(); ++k) {
        if (!(rep.sup_measure[k] > 0.0))
            throw std::invalid_argument("eps below the xi grid resolution; increase xi_samples");
        lx.push_back(std::log(eps[k]));
        ly.push_back(std::log(rep.sup_measure[k]));
    }
    const LinearFit fit = least_squares(lx, ly);
    rep.raw_slope = fit.slope;
    rep.fit_residual = fit.rms_residual;
    rep.theta_hat = std::clamp(fit.slope, 0.0, 1.0);
    if (condition == Condition::deterministic && rep.theta_hat > 1.0 / static_cast<double>(n) + 0.1) {
        rep.exceeds_smooth_bound = true;
        std::ostringstream os;
        os << "deterministic exponent " << rep.theta_hat << " exceeds 1/N + 0.1 for a smooth flux";
        rep.warnings.push_back(os.str());
    }
    return rep;
}

}  // namespace sscl
