#pragma once

#include <string>
#include <vector>

namespace sscl {

/// Real polynomial with coefficients in increasing degree order.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);

    double operator()(double x) const noexcept {
        double r = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
        return r;
    }

    Polynomial derivative() const;
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }

    /// Every real root, sorted. Repeated roots appear once.
    std::vector<double> real_roots() const;
    /// Real roots inside [lo, hi].
    std::vector<double> real_roots(double lo, double hi) const;
    /// All real roots lie in [-bound, bound].
    double cauchy_bound() const;

    std::string to_string() const;

private:
    std::vector<double> coeffs_;  // trailing zeros trimmed
};

}  // namespace sscl
