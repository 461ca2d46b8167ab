#include "sscl/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "sscl/rng.hpp"

namespace sscl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double param(std::span<const double> p, std::size_t k, double fallback) {
    return p.size() > k ? p[k] : fallback;
}

// Average of sin(2 pi k x) and cos(2 pi k x) over [i h, (i+1) h].
double avg_sin(double k, std::size_t i, double h) {
    const double a = static_cast<double>(i) * h;
    return (std::cos(kTwoPi * k * a) - std::cos(kTwoPi * k * (a + h))) / (kTwoPi * k * h);
}
double avg_cos(double k, std::size_t i, double h) {
    const double a = static_cast<double>(i) * h;
    return (std::sin(kTwoPi * k * (a + h)) - std::sin(kTwoPi * k * a)) / (kTwoPi * k * h);
}

Field blank(std::size_t dim, std::size_t n) {
    if (dim == 1) return Field(n);
    if (dim == 2) return Field(n, n);
    throw std::invalid_argument("initial data supports dimension 1 or 2");
}

}  // namespace

Field make_initial(std::string_view name, std::span<const double> params, std::size_t dim,
                   std::size_t cells) {
    Field u = blank(dim, cells);
    const double h = 1.0 / static_cast<double>(cells);
    const std::size_t ny = u.ny();

    if (name == "sine") {
        const double amp = param(params, 0, 1.0);
        const double k = param(params, 1, 1.0);
        const double offset = param(params, 2, 0.0);
        if (k < 1.0 || k != std::floor(k)) throw std::invalid_argument("sine mode must be a positive integer");
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t i = 0; i < cells; ++i)
                u.at(i, j) = offset + amp * avg_sin(k, i, h) * (dim == 2 ? avg_sin(k, j, h) : 1.0);
        return u;
    }
    if (name == "sawtooth") {
        const double amp = param(params, 0, 1.0);
        // 2 frac(s) - 1 averaged over a cell; the cell straddling the jump is integrated piecewise.
        auto saw_avg = [&](double s0, double s1) {
            const double fl = std::floor(s0);
            const double a = s0 - fl;
            const double b = s1 - fl;
            auto prim = [](double s) { return s * s - s; };  // antiderivative of 2 s - 1
            if (b <= 1.0) return (prim(b) - prim(a)) / (s1 - s0);
            return (prim(1.0) - prim(a) + prim(b - 1.0) - prim(0.0)) / (s1 - s0);
        };
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t i = 0; i < cells; ++i) {
                if (dim == 1) {
                    u.at(i) = amp * saw_avg(static_cast<double>(i) * h, static_cast<double>(i + 1) * h);
                } else {
                    // average over x2 of the x1-average, by midpoint rule in x2 with 16 points
                    double s = 0.0;
                    for (int q = 0; q < 16; ++q) {
                        const double y = (static_cast<double>(j) + (q + 0.5) / 16.0) * h;
                        s += saw_avg(static_cast<double>(i) * h + y, static_cast<double>(i + 1) * h + y);
                    }
                    u.at(i, j) = amp * s / 16.0;
                }
            }
        return u;
    }
    if (name == "random_fourier") {
        if (params.size() < 2) throw std::invalid_argument("random_fourier needs (modes, seed)");
        const auto modes = static_cast<std::size_t>(params[0]);
        const auto seed = static_cast<std::uint64_t>(params[1]);
        const double amp = param(params, 2, 1.0);
        if (modes == 0) throw std::invalid_argument("random_fourier needs at least one mode");
        std::size_t draw = 0;
        auto gauss = [&] { return rng::normal(seed, 0, draw++, 0); };
        if (dim == 1) {
            for (std::size_t k = 1; k <= modes; ++k) {
                const double a = gauss() / static_cast<double>(k);
                const double b = gauss() / static_cast<double>(k);
                const double kk = static_cast<double>(k);
                for (std::size_t i = 0; i < cells; ++i) u.at(i) += a * avg_cos(kk, i, h) + b * avg_sin(kk, i, h);
            }
        } else {
            const auto m = static_cast<long>(modes);
            for (long k1 = 0; k1 <= m; ++k1)
                for (long k2 = -m; k2 <= m; ++k2) {
                    if (k1 == 0 && k2 <= 0) continue;
                    const double w = 1.0 / std::hypot(static_cast<double>(k1), static_cast<double>(k2));
                    const double a = gauss() * w;
                    const double b = gauss() * w;
                    // cos/sin of 2 pi (k1 x1 + k2 x2) via products of separable cell averages
                    for (std::size_t j = 0; j < ny; ++j)
                        for (std::size_t i = 0; i < cells; ++i) {
                            const double c1 = k1 == 0 ? 1.0 : avg_cos(static_cast<double>(k1), i, h);
                            const double s1 = k1 == 0 ? 0.0 : avg_sin(static_cast<double>(k1), i, h);
                            const double k2a = std::abs(static_cast<double>(k2));
                            const double sg = k2 < 0 ? -1.0 : 1.0;
                            const double c2 = k2 == 0 ? 1.0 : avg_cos(k2a, j, h);
                            const double s2 = k2 == 0 ? 0.0 : sg * avg_sin(k2a, j, h);
                            u.at(i, j) += a * (c1 * c2 - s1 * s2) + b * (s1 * c2 + c1 * s2);
                        }
                }
        }
        const double top = u.linf();
        if (top > 0.0)
            for (auto& v : u.data()) v *= amp / top;
        return u;
    }
    if (name == "riemann") {
        if (params.size() < 2) throw std::invalid_argument("riemann needs (uL, uR)");
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t i = 0; i < cells; ++i) {
                const double x0 = static_cast<double>(i) * h;
                const double x1 = x0 + h;
                double frac_left = 0.0;
                if (x1 <= 0.5) frac_left = 1.0;
                else if (x0 < 0.5) frac_left = (0.5 - x0) / h;
                u.at(i, j) = frac_left * params[0] + (1.0 - frac_left) * params[1];
            }
        return u;
    }
    if (name == "constant") {
        const double c = param(params, 0, 0.0);
        for (auto& v : u.data()) v = c;
        return u;
    }
    throw std::invalid_argument("unknown initial data '" + std::string(name) + "'");
}

}  // namespace sscl
