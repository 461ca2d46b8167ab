#pragma once

#include <iosfwd>
#include <span>
#include <vector>

namespace sscl {

/// Cell averages on the unit torus in one or two dimensions.
///
/// Storage is row-major with the x1 index fastest: u(i, j) = data[i + nx * j].
class Field {
public:
    Field() = default;
    explicit Field(std::size_t nx, double value = 0.0);
    Field(std::size_t nx, std::size_t ny, double value = 0.0);

    std::size_t dim() const noexcept { return ny_ == 0 ? 1 : 2; }
    std::size_t nx() const noexcept { return nx_; }
    std::size_t ny() const noexcept { return ny_ == 0 ? 1 : ny_; }
    std::size_t size() const noexcept { return data_.size(); }
    /// Cell volume.
    double cell_volume() const noexcept { return 1.0 / static_cast<double>(data_.size()); }

    double& operator[](std::size_t k) noexcept { return data_[k]; }
    double operator[](std::size_t k) const noexcept { return data_[k]; }
    double& at(std::size_t i, std::size_t j = 0) noexcept { return data_[i + nx_ * j]; }
    double at(std::size_t i, std::size_t j = 0) const noexcept { return data_[i + nx_ * j]; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    bool same_shape(const Field& other) const noexcept { return nx_ == other.nx_ && ny_ == other.ny_; }
    bool all_finite() const noexcept;

    double mean() const noexcept;
    double min() const noexcept;
    double max() const noexcept;
    double linf() const noexcept;
    double l1() const noexcept;
    /// (integral |u|^p)^(1/p).
    double lp(double p) const noexcept;
    /// integral |u|^p without the root.
    double lp_power(double p) const noexcept;
    /// integral |u - c|.
    double l1_to(double c) const noexcept;
    /// Periodic total variation: sum of jumps times the transverse cell size.
    double bv() const noexcept;

    friend double l1_distance(const Field& a, const Field& b);

private:
    std::size_t nx_ = 0;
    std::size_t ny_ = 0;  // 0 marks a one-dimensional field
    std::vector<double> data_;
};

double l1_distance(const Field& a, const Field& b);

/// Header `i[nx],u` or `i[nx],j[ny],u`, then one row per cell.
void write_field_csv(const Field& f, std::ostream& os);
Field read_field_csv(std::istream& is);

}  // namespace sscl
