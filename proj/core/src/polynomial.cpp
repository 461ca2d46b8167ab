#include "sscl/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sscl {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial{};
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return Polynomial(std::move(d));
}

double Polynomial::cauchy_bound() const {
    if (coeffs_.size() <= 1) return 0.0;
    const double lead = std::abs(coeffs_.back());
    double m = 0.0;
    for (std::size_t k = 0; k + 1 < coeffs_.size(); ++k) m = std::max(m, std::abs(coeffs_[k]) / lead);
    return 1.0 + m;
}

namespace {

double bisect(const Polynomial& p, double lo, double hi) {
    double flo = p(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = p(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

// Roots are isolated between consecutive critical points, which are themselves
// the roots of the derivative; recursion bottoms out at degree one.
std::vector<double> Polynomial::real_roots(double lo, double hi) const {
    std::vector<double> roots;
    if (coeffs_.size() <= 1 || lo > hi) return roots;
    if (coeffs_.size() == 2) {
        const double r = -coeffs_[0] / coeffs_[1];
        if (r >= lo && r <= hi) roots.push_back(r);
        return roots;
    }
    std::vector<double> knots{lo};
    for (double c : derivative().real_roots(lo, hi))
        if (c > knots.back()) knots.push_back(c);
    if (hi > knots.back()) knots.push_back(hi);

    const Polynomial& p = *this;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const double a = knots[k];
        const double b = knots[k + 1];
        const double fa = p(a);
        const double fb = p(b);
        if (fa == 0.0) {
            roots.push_back(a);
        } else if (fb != 0.0 && (fa < 0.0) != (fb < 0.0)) {
            roots.push_back(bisect(p, a, b));
        }
    }
    if (knots.size() > 1 && p(knots.back()) == 0.0) roots.push_back(knots.back());
    // A critical point where |p| is within roundoff of zero is a repeated root.
    for (std::size_t k = 1; k + 1 < knots.size(); ++k) {
        double scale = 0.0;
        for (std::size_t j = 0; j < coeffs_.size(); ++j)
            scale += std::abs(coeffs_[j]) * std::pow(std::abs(knots[k]), static_cast<double>(j));
        if (std::abs(p(knots[k])) <= 1e-14 * std::max(scale, 1e-300)) roots.push_back(knots[k]);
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots)
        if (unique.empty() || r - unique.back() > 1e-12 * std::max(1.0, std::abs(r))) unique.push_back(r);
    return unique;
}

std::vector<double> Polynomial::real_roots() const {
    const double b = cauchy_bound();
    return real_roots(-b, b);
}

std::string Polynomial::to_string() const {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (k) os << ' ';
        os << coeffs_[k];
    }
    return os.str();
}

}  // namespace sscl
