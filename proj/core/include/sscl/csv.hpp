#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sscl::csv {

/// Shortest form that round-trips (at most 17 significant digits).
std::string format(double x);
std::vector<std::string> split(std::string_view line, char sep = ',');
double parse_double(std::string_view s);
std::string trim(std::string_view s);

}  // namespace sscl::csv
