#pragma once

#include <complex>
#include <vector>

#include "sscl/field.hpp"

namespace sscl {

/// Signed lattice frequency of FFT index k on an n-point axis.
inline long frequency(std::size_t k, std::size_t n) noexcept {
    return k <= n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

/// Discrete Fourier coefficients u^(n) = (1/N) sum_j u_j exp(-2 pi i n . j / N) of a grid
/// function, stored in the same (k1 fastest) layout as Field.
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(std::size_t nx, std::size_t ny);  // ny = 0 for 1D

    static SpectralField from_field(const Field& u);
    /// Real part of the inverse transform.
    Field to_field() const;

    std::size_t dim() const noexcept { return ny_ == 0 ? 1 : 2; }
    std::size_t nx() const noexcept { return nx_; }
    std::size_t ny() const noexcept { return ny_ == 0 ? 1 : ny_; }
    std::size_t size() const noexcept { return c_.size(); }

    std::complex<double>& operator[](std::size_t k) noexcept { return c_[k]; }
    const std::complex<double>& operator[](std::size_t k) const noexcept { return c_[k]; }
    /// Coefficient at signed lattice frequency (n1, n2); wraps modulo the grid.
    std::complex<double>& mode(long n1, long n2 = 0) noexcept;
    const std::complex<double>& mode(long n1, long n2 = 0) const noexcept;
    /// Signed frequencies of storage index k.
    std::pair<long, long> frequencies(std::size_t k) const noexcept;
    /// Euclidean |n| of storage index k.
    double magnitude(std::size_t k) const noexcept;

    std::vector<std::complex<double>>& coeffs() noexcept { return c_; }
    const std::vector<std::complex<double>>& coeffs() const noexcept { return c_; }

private:
    std::size_t index(long n1, long n2) const noexcept;

    std::size_t nx_ = 0;
    std::size_t ny_ = 0;
    std::vector<std::complex<double>> c_;
};

}  // namespace sscl
