#include "sscl/lemma_b.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sscl/polynomial.hpp"
#include "sscl/rng.hpp"

namespace sscl {

std::vector<double> uniform_grid(double lo, double hi, std::size_t count) {
    if (count < 2 || !(hi > lo)) throw std::invalid_argument("bad grid specification");
    std::vector<double> g(count);
    for (std::size_t k = 0; k < count; ++k)
        g[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
    g.back() = hi;
    return g;
}

std::vector<double> default_w_grid(double a, std::size_t count) {
    const double W = 4.5 * std::sqrt(a);
    return uniform_grid(-W, W, count);
}

LemmaBResult verify_lemma_b(double a, const std::function<double(double)>& b,
                            const std::function<double(double)>& f,
                            const std::function<double(double)>& iota, std::span<const double> w_grid,
                            std::span<const double> xi_grid) {
    if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
    if (w_grid.size() < 2 || xi_grid.size() < 2) throw std::invalid_argument("grids need at least two nodes");

    std::vector<double> bx, fx;
    double f_norm2 = 0.0;
    for (std::size_t j = 0; j + 1 < xi_grid.size(); ++j) {
        const double h = xi_grid[j + 1] - xi_grid[j];
        const double mid = 0.5 * (xi_grid[j] + xi_grid[j + 1]);
        const double fv = f(mid);
        f_norm2 += fv * fv * h;
        if (fv == 0.0) continue;
        bx.push_back(b(mid));
        fx.push_back(fv * h);
    }

    double lhs = 0.0;
    for (std::size_t k = 0; k < w_grid.size(); ++k) {
        const double w = w_grid[k];
        double re = 0.0;
        double im = 0.0;
        for (std::size_t j = 0; j < bx.size(); ++j) {
            const double ph = bx[j] * w;
            re += fx[j] * std::cos(ph);
            im += fx[j] * std::sin(ph);
        }
        const double left = k > 0 ? w_grid[k] - w_grid[k - 1] : 0.0;
        const double right = k + 1 < w_grid.size() ? w_grid[k + 1] - w_grid[k] : 0.0;
        lhs += 0.5 * (left + right) * std::exp(-2.0 * w * w / a) * (re * re + im * im);
    }

    // tau e^{-tau^2} is below 1e-40 past tau = 10.
    constexpr std::size_t kTau = 20001;
    const double dt = 10.0 / static_cast<double>(kTau - 1);
    double tau_int = 0.0;
    for (std::size_t k = 0; k < kTau; ++k) {
        const double tau = dt * static_cast<double>(k);
        const double w = (k == 0 || k + 1 == kTau) ? 0.5 * dt : dt;
        tau_int += w * tau * std::exp(-tau * tau) * iota(2.0 * tau / std::sqrt(a));
    }
    LemmaBResult r;
    r.lhs = lhs;
    r.rhs = 2.0 * std::sqrt(a * std::numbers::pi) * tau_int * f_norm2;
    r.pass = r.lhs <= r.rhs * (1.0 + 1e-3);
    return r;
}

LemmaBInstance random_lemma_b_instance(std::uint64_t seed, std::size_t index) {
    std::uint64_t draw = 0;
    auto uni = [&](double lo, double hi) { return lo + (hi - lo) * rng::uniform(rng::key(seed, index, draw++, 0)); };
    LemmaBInstance inst;
    inst.a = std::exp(uni(std::log(0.25), std::log(4.0)));
    const int degree = 1 + static_cast<int>(uni(0.0, 3.0 - 1e-12));
    for (int d = 0; d < degree; ++d) inst.b_coeffs.push_back(uni(-1.0, 1.0));
    const double lead = uni(0.3, 1.5) * (uni(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    inst.b_coeffs.push_back(lead);

    const double lo = uni(-1.0, 0.5);
    inst.support = uni(0.3, 1.5);
    const auto pieces = 1 + static_cast<std::size_t>(uni(0.0, 5.0 - 1e-12));
    std::vector<double> cuts{lo, lo + inst.support};
    for (std::size_t k = 1; k < pieces; ++k) cuts.push_back(uni(lo, lo + inst.support));
    std::sort(cuts.begin(), cuts.end());
    inst.f_breaks = cuts;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) inst.f_values.push_back(uni(-1.0, 1.0));

    // Polya: |{x : |p(x) - z| <= eps}| <= 4 (eps / (2 |lead|))^(1/degree).
    inst.iota_theta = 1.0 / degree;
    inst.iota_C = 4.0 * std::pow(2.0 * std::abs(lead), -inst.iota_theta);
    inst.result = evaluate_instance(inst);
    return inst;
}

LemmaBResult evaluate_instance(const LemmaBInstance& inst) {
    const Polynomial p(inst.b_coeffs);
    const auto& br = inst.f_breaks;
    const auto& vals = inst.f_values;
    auto f = [&](double x) {
        for (std::size_t k = 0; k < vals.size(); ++k)
            if (x >= br[k] && x < br[k + 1]) return vals[k];
        return 0.0;
    };
    auto iota = [&](double eps) { return std::min(inst.support, inst.iota_C * std::pow(eps, inst.iota_theta)); };
    // nodes on every breakpoint so each midpoint cell sits inside one piece
    std::vector<double> xi;
    const double span = br.back() - br.front();
    for (std::size_t k = 0; k + 1 < br.size(); ++k) {
        const double len = br[k + 1] - br[k];
        if (len <= 0.0) continue;
        const auto n = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(2000.0 * len / span)) + 1);
        const auto piece = uniform_grid(br[k], br[k + 1], n);
        xi.insert(xi.end(), xi.empty() ? piece.begin() : piece.begin() + 1, piece.end());
    }
    return verify_lemma_b(inst.a, [&](double x) { return p(x); }, f, iota, default_w_grid(inst.a, 801), xi);
}

LemmaBResult closed_form_lemma_b() {
    return verify_lemma_b(
        1.0, [](double x) { return x; }, [](double x) { return x >= 0.0 && x < 1.0 ? 1.0 : 0.0; },
        [](double eps) { return 2.0 * eps; }, default_w_grid(1.0, 2001), uniform_grid(0.0, 1.0, 2001));
}

}  // namespace sscl
