#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sscl {

/// Raised when the solver state stops being finite.
class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(const std::string& what, double time, std::uint64_t seed = 0)
        : std::runtime_error(what), time_(time), seed_(seed) {}

    double time() const noexcept { return time_; }
    std::uint64_t seed() const noexcept { return seed_; }
    void set_seed(std::uint64_t seed) noexcept { seed_ = seed; }

private:
    double time_;
    std::uint64_t seed_;
};

}  // namespace sscl
