#pragma once

#include <span>
#include <string_view>

#include "sscl/field.hpp"

namespace sscl {

/// Exact cell averages of a named initial condition on an n^dim grid.
///
///  sine            [amplitude = 1, mode = 1, offset = 0]
///                                                  b + a sin(2 pi k x1) (times sin(2 pi k x2) in 2D)
///  sawtooth        [amplitude = 1]                 a (2 frac(x1 + x2) - 1)
///  random_fourier  [modes, seed, amplitude = 1]    random trigonometric sum scaled to max |u| = a
///  riemann         [uL, uR]                        uL on x1 < 1/2, uR on x1 >= 1/2
///  constant        [c]
Field make_initial(std::string_view name, std::span<const double> params, std::size_t dim,
                   std::size_t cells);

}  // namespace sscl
