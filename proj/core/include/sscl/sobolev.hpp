#pragma once

#include "sscl/field.hpp"

namespace sscl {

/// L1 norm of the inverse transform of |n|^lambda u^(n), zero mode removed.
double w_lambda_1_norm(const Field& u, double lambda);

/// (sum_n |n|^(2 lambda) |u^(n)|^2)^(1/2) over n != 0.
double h_lambda_norm(const Field& u, double lambda);

}  // namespace sscl
