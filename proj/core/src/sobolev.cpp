#include "sscl/sobolev.hpp"

#include <cmath>
#include <stdexcept>

#include "sscl/fft.hpp"

namespace sscl {

double w_lambda_1_norm(const Field& u, double lambda) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
    SpectralField s = SpectralField::from_field(u);
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double n = s.magnitude(k);
        s[k] = n == 0.0 ? 0.0 : s[k] * std::pow(n, lambda);
    }
    return s.to_field().l1();
}

double h_lambda_norm(const Field& u, double lambda) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
    const SpectralField s = SpectralField::from_field(u);
    double sum = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double n = s.magnitude(k);
        if (n == 0.0) continue;
        sum += std::pow(n, 2.0 * lambda) * std::norm(s[k]);
    }
    return std::sqrt(sum);
}

}  // namespace sscl
