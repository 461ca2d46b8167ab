#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace sscl {

/// One linear piece of a driving path.
struct PathSegment {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<double> dbeta;  // one increment per component
};

/// Piecewise-linear N-component path on [0, horizon] with value 0 at t = 0.
///
/// Breakpoint times and values live on a dyadic lattice of spacing 2^-36, so
/// every increment and partial sum is exact in double precision. Refinement
/// therefore never perturbs a parent value and `segments()` telescopes bitwise.
class DrivingPath {
public:
    enum class Kind { brownian, deterministic };

    static constexpr double kLattice = 0x1.0p-36;
    static constexpr double kMaxMagnitude = 0x1.0p+16;

    /// Brownian increments with variance equal to the segment length.
    static DrivingPath sample_brownian(std::uint64_t seed, std::size_t n_components,
                                       double horizon, std::size_t segments);
    /// beta_i(t) = t for every component.
    static DrivingPath identity(std::size_t n_components, double horizon, std::size_t segments);
    /// Arbitrary breakpoints; values are row-major (breakpoint, component).
    static DrivingPath from_breakpoints(std::vector<double> times, std::vector<double> values,
                                        std::size_t n_components, Kind kind = Kind::brownian,
                                        std::uint64_t seed = 0, int level = 0);

    /// Inserts a Brownian-bridge midpoint in every interval (linear midpoint for
    /// deterministic paths). The bridge draw is keyed by (seed, level, interval).
    DrivingPath refine() const;
    DrivingPath refine(int levels) const;

    std::vector<PathSegment> segments() const;

    /// Linear interpolation; t is clamped to [0, horizon].
    double value(double t, std::size_t component) const;
    std::vector<double> value(double t) const;

    std::size_t n_components() const noexcept { return n_components_; }
    std::size_t n_breakpoints() const noexcept { return times_.size(); }
    std::size_t n_segments() const noexcept { return times_.size() - 1; }
    double horizon() const noexcept { return times_.back(); }
    std::uint64_t seed() const noexcept { return seed_; }
    int level() const noexcept { return level_; }
    Kind kind() const noexcept { return kind_; }
    std::span<const double> times() const noexcept { return times_; }
    double breakpoint_value(std::size_t k, std::size_t component) const {
        return values_[k * n_components_ + component];
    }

    static double quantize(double x);

private:
    DrivingPath() = default;
    void validate() const;

    std::size_t n_components_ = 0;
    std::vector<double> times_;
    std::vector<double> values_;
    std::uint64_t seed_ = 0;
    int level_ = 0;
    Kind kind_ = Kind::brownian;
};

/// Columns `t,beta_1,...,beta_N` with 17 significant digits and a header row.
void write_path_csv(const DrivingPath& path, std::ostream& os);
DrivingPath read_path_csv(std::istream& is);

}  // namespace sscl
