#include "sscl/field.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "sscl/csv.hpp"

namespace sscl {

Field::Field(std::size_t nx, double value) : nx_(nx), data_(nx, value) {
    if (nx == 0) throw std::invalid_argument("field needs at least one cell");
}

Field::Field(std::size_t nx, std::size_t ny, double value) : nx_(nx), ny_(ny), data_(nx * ny, value) {
    if (nx == 0 || ny == 0) throw std::invalid_argument("field needs at least one cell");
}

bool Field::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double Field::mean() const noexcept {
    double s = 0.0;
    for (double v : data_) s += v;
    return s / static_cast<double>(data_.size());
}

double Field::min() const noexcept { return *std::min_element(data_.begin(), data_.end()); }
double Field::max() const noexcept { return *std::max_element(data_.begin(), data_.end()); }

double Field::linf() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

double Field::l1() const noexcept { return l1_to(0.0); }

double Field::l1_to(double c) const noexcept {
    double s = 0.0;
    for (double v : data_) s += std::abs(v - c);
    return s * cell_volume();
}

double Field::lp_power(double p) const noexcept {
    double s = 0.0;
    if (p == 2.0) {
        for (double v : data_) s += v * v;
    } else {
        for (double v : data_) s += std::pow(std::abs(v), p);
    }
    return s * cell_volume();
}

double Field::lp(double p) const noexcept { return std::pow(lp_power(p), 1.0 / p); }

double Field::bv() const noexcept {
    const std::size_t ny = this->ny();
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx_; ++i) {
            const double u = at(i, j);
            sx += std::abs(at((i + 1) % nx_, j) - u);
            if (ny_ != 0) sy += std::abs(at(i, (j + 1) % ny) - u);
        }
    // A jump across an x1-face spans a face of length 1/ny, and vice versa.
    return sx / static_cast<double>(ny) + (ny_ != 0 ? sy / static_cast<double>(nx_) : 0.0);
}

double l1_distance(const Field& a, const Field& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("fields differ in shape");
    double s = 0.0;
    for (std::size_t k = 0; k < a.data_.size(); ++k) s += std::abs(a.data_[k] - b.data_[k]);
    return s * a.cell_volume();
}

void write_field_csv(const Field& f, std::ostream& os) {
    if (f.dim() == 1) {
        os << "i[" << f.nx() << "],u\n";
        for (std::size_t i = 0; i < f.nx(); ++i) os << i << ',' << csv::format(f.at(i)) << '\n';
        return;
    }
    os << "i[" << f.nx() << "],j[" << f.ny() << "],u\n";
    for (std::size_t j = 0; j < f.ny(); ++j)
        for (std::size_t i = 0; i < f.nx(); ++i) os << i << ',' << j << ',' << csv::format(f.at(i, j)) << '\n';
}

namespace {

std::size_t bracket_count(const std::string& col) {
    const auto a = col.find('[');
    const auto b = col.find(']');
    if (a == std::string::npos || b == std::string::npos || b <= a + 1)
        throw std::invalid_argument("field header must name the grid shape");
    return static_cast<std::size_t>(std::stoul(col.substr(a + 1, b - a - 1)));
}

}  // namespace

Field read_field_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("empty field file");
    const auto head = csv::split(csv::trim(line));
    Field f;
    if (head.size() == 2) {
        f = Field(bracket_count(head[0]));
    } else if (head.size() == 3) {
        f = Field(bracket_count(head[0]), bracket_count(head[1]));
    } else {
        throw std::invalid_argument("unrecognised field header");
    }
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        const auto t = csv::trim(line);
        if (t.empty()) continue;
        const auto cols = csv::split(t);
        if (cols.size() != head.size()) throw std::invalid_argument("bad field row");
        const auto i = static_cast<std::size_t>(std::stoul(cols[0]));
        const std::size_t j = head.size() == 3 ? static_cast<std::size_t>(std::stoul(cols[1])) : 0;
        if (i >= f.nx() || j >= f.ny()) throw std::invalid_argument("field index out of range");
        f.at(i, j) = csv::parse_double(cols.back());
        ++rows;
    }
    if (rows != f.size()) throw std::invalid_argument("field file has missing rows");
    return f;
}

}  // namespace sscl
