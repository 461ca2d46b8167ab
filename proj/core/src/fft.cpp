#include "sscl/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace sscl {

namespace {

// FFTW planning is not thread-safe; execution on fresh arrays is.
class PlanCache {
public:
    fftw_plan get(std::size_t nx, std::size_t ny, int sign) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_tuple(nx, ny, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        const std::size_t n = nx * (ny == 0 ? 1 : ny);
        auto* in = fftw_alloc_complex(n);
        auto* out = fftw_alloc_complex(n);
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        // FFTW is row-major with the last index fastest, so x2 is the slow index.
        fftw_plan p = ny == 0 ? fftw_plan_dft_1d(static_cast<int>(nx), in, out, sign, flags)
                              : fftw_plan_dft_2d(static_cast<int>(ny), static_cast<int>(nx), in, out, sign, flags);
        fftw_free(in);
        fftw_free(out);
        if (p == nullptr) throw std::runtime_error("FFT planning failed");
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void execute(std::size_t nx, std::size_t ny, int sign, std::vector<std::complex<double>>& in,
             std::vector<std::complex<double>>& out) {
    fftw_plan p = cache().get(nx, ny, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()), reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

SpectralField::SpectralField(std::size_t nx, std::size_t ny)
    : nx_(nx), ny_(ny), c_(nx * (ny == 0 ? 1 : ny)) {}

SpectralField SpectralField::from_field(const Field& u) {
    SpectralField s(u.nx(), u.dim() == 1 ? 0 : u.ny());
    std::vector<std::complex<double>> in(u.data().begin(), u.data().end());
    execute(s.nx_, s.ny_, FFTW_FORWARD, in, s.c_);
    const double scale = 1.0 / static_cast<double>(u.size());
    for (auto& z : s.c_) z *= scale;
    return s;
}

Field SpectralField::to_field() const {
    std::vector<std::complex<double>> in = c_;
    std::vector<std::complex<double>> out(c_.size());
    execute(nx_, ny_, FFTW_BACKWARD, in, out);
    Field u = ny_ == 0 ? Field(nx_) : Field(nx_, ny_);
    for (std::size_t k = 0; k < out.size(); ++k) u[k] = out[k].real();
    return u;
}

std::size_t SpectralField::index(long n1, long n2) const noexcept {
    const auto wrap = [](long n, std::size_t m) {
        const long mm = static_cast<long>(m);
        return static_cast<std::size_t>(((n % mm) + mm) % mm);
    };
    return wrap(n1, nx_) + nx_ * (ny_ == 0 ? 0 : wrap(n2, ny_));
}

std::complex<double>& SpectralField::mode(long n1, long n2) noexcept { return c_[index(n1, n2)]; }
const std::complex<double>& SpectralField::mode(long n1, long n2) const noexcept { return c_[index(n1, n2)]; }

std::pair<long, long> SpectralField::frequencies(std::size_t k) const noexcept {
    const long n1 = frequency(k % nx_, nx_);
    const long n2 = ny_ == 0 ? 0 : frequency(k / nx_, ny_);
    return {n1, n2};
}

double SpectralField::magnitude(std::size_t k) const noexcept {
    const auto [n1, n2] = frequencies(k);
    return std::hypot(static_cast<double>(n1), static_cast<double>(n2));
}

}  // namespace sscl
