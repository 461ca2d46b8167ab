#include "sscl/paths.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sscl/csv.hpp"
#include "sscl/rng.hpp"

namespace sscl {

double DrivingPath::quantize(double x) {
    const double q = std::nearbyint(x / kLattice) * kLattice;
    if (!(std::abs(q) < kMaxMagnitude))
        throw std::invalid_argument("path value outside representable lattice range");
    return q;
}

void DrivingPath::validate() const {
    if (n_components_ == 0) throw std::invalid_argument("path needs at least one component");
    if (times_.size() < 2) throw std::invalid_argument("path needs at least one segment");
    if (values_.size() != times_.size() * n_components_)
        throw std::invalid_argument("path values do not match breakpoints");
    if (times_.front() != 0.0) throw std::invalid_argument("path must start at t = 0");
    for (std::size_t i = 0; i < n_components_; ++i)
        if (values_[i] != 0.0) throw std::invalid_argument("path must vanish at t = 0");
    for (std::size_t k = 1; k < times_.size(); ++k)
        if (!(times_[k] > times_[k - 1]))
            throw std::invalid_argument("path breakpoints must be strictly increasing");
}

DrivingPath DrivingPath::sample_brownian(std::uint64_t seed, std::size_t n_components,
                                         double horizon, std::size_t segments) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    if (segments == 0) throw std::invalid_argument("segments must be at least 1");
    if (n_components == 0) throw std::invalid_argument("path needs at least one component");
    DrivingPath p;
    p.n_components_ = n_components;
    p.seed_ = seed;
    p.kind_ = Kind::brownian;
    p.times_.resize(segments + 1);
    p.values_.assign((segments + 1) * n_components, 0.0);
    for (std::size_t k = 0; k <= segments; ++k)
        p.times_[k] = quantize(horizon * static_cast<double>(k) / static_cast<double>(segments));
    p.times_.back() = quantize(horizon);
    for (std::size_t k = 0; k < segments; ++k) {
        const double dt = p.times_[k + 1] - p.times_[k];
        for (std::size_t i = 0; i < n_components; ++i) {
            const double inc = quantize(std::sqrt(dt) * rng::normal(seed, 0, k, i));
            p.values_[(k + 1) * n_components + i] = p.values_[k * n_components + i] + inc;
        }
    }
    p.validate();
    return p;
}

DrivingPath DrivingPath::identity(std::size_t n_components, double horizon, std::size_t segments) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    if (segments == 0) throw std::invalid_argument("segments must be at least 1");
    DrivingPath p;
    p.n_components_ = n_components;
    p.kind_ = Kind::deterministic;
    p.times_.resize(segments + 1);
    for (std::size_t k = 0; k <= segments; ++k)
        p.times_[k] = quantize(horizon * static_cast<double>(k) / static_cast<double>(segments));
    p.times_.back() = quantize(horizon);
    p.values_.resize((segments + 1) * n_components);
    for (std::size_t k = 0; k <= segments; ++k)
        for (std::size_t i = 0; i < n_components; ++i) p.values_[k * n_components + i] = p.times_[k];
    p.validate();
    return p;
}

DrivingPath DrivingPath::from_breakpoints(std::vector<double> times, std::vector<double> values,
                                          std::size_t n_components, Kind kind, std::uint64_t seed,
                                          int level) {
    DrivingPath p;
    p.n_components_ = n_components;
    p.kind_ = kind;
    p.seed_ = seed;
    p.level_ = level;
    for (double& t : times) t = quantize(t);
    for (double& v : values) v = quantize(v);
    p.times_ = std::move(times);
    p.values_ = std::move(values);
    p.validate();
    return p;
}

DrivingPath DrivingPath::refine() const {
    const std::size_t n = n_components_;
    const std::size_t segs = n_segments();
    DrivingPath r;
    r.n_components_ = n;
    r.seed_ = seed_;
    r.kind_ = kind_;
    r.level_ = level_ + 1;
    r.times_.resize(2 * segs + 1);
    r.values_.resize((2 * segs + 1) * n);
    for (std::size_t k = 0; k <= segs; ++k) {
        r.times_[2 * k] = times_[k];
        for (std::size_t i = 0; i < n; ++i) r.values_[2 * k * n + i] = values_[k * n + i];
    }
    for (std::size_t k = 0; k < segs; ++k) {
        const double t0 = times_[k];
        const double t1 = times_[k + 1];
        const double tm = quantize(0.5 * (t0 + t1));
        if (!(tm > t0 && tm < t1)) throw std::invalid_argument("path refined below lattice spacing");
        r.times_[2 * k + 1] = tm;
        // Conditional law of the midpoint given both ends, scaled to the actual split.
        const double w0 = (t1 - tm) / (t1 - t0);
        const double var = (tm - t0) * (t1 - tm) / (t1 - t0);
        for (std::size_t i = 0; i < n; ++i) {
            const double v0 = values_[k * n + i];
            const double v1 = values_[(k + 1) * n + i];
            double mid = w0 * v0 + (1.0 - w0) * v1;
            if (kind_ == Kind::brownian)
                mid += std::sqrt(var) * rng::normal(seed_, static_cast<std::uint64_t>(r.level_), k, i);
            r.values_[(2 * k + 1) * n + i] = quantize(mid);
        }
    }
    return r;
}

DrivingPath DrivingPath::refine(int levels) const {
    DrivingPath p = *this;
    for (int l = 0; l < levels; ++l) p = p.refine();
    return p;
}

std::vector<PathSegment> DrivingPath::segments() const {
    const std::size_t n = n_components_;
    std::vector<PathSegment> out(n_segments());
    for (std::size_t k = 0; k + 1 < times_.size(); ++k) {
        PathSegment& s = out[k];
        s.t0 = times_[k];
        s.dt = times_[k + 1] - times_[k];
        s.dbeta.resize(n);
        for (std::size_t i = 0; i < n; ++i) s.dbeta[i] = values_[(k + 1) * n + i] - values_[k * n + i];
    }
    return out;
}

double DrivingPath::value(double t, std::size_t component) const {
    if (component >= n_components_) throw std::out_of_range("path component");
    t = std::clamp(t, 0.0, horizon());
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t k = static_cast<std::size_t>(it - times_.begin());
    if (k == 0) return values_[component];
    if (k >= times_.size()) return values_[(times_.size() - 1) * n_components_ + component];
    --k;
    const double t0 = times_[k];
    const double t1 = times_[k + 1];
    const double v0 = values_[k * n_components_ + component];
    const double v1 = values_[(k + 1) * n_components_ + component];
    if (t == t0) return v0;
    return v0 + (v1 - v0) * ((t - t0) / (t1 - t0));
}

std::vector<double> DrivingPath::value(double t) const {
    std::vector<double> v(n_components_);
    for (std::size_t i = 0; i < n_components_; ++i) v[i] = value(t, i);
    return v;
}

void write_path_csv(const DrivingPath& path, std::ostream& os) {
    os << "t";
    for (std::size_t i = 0; i < path.n_components(); ++i) os << ",beta_" << (i + 1);
    os << '\n';
    for (std::size_t k = 0; k < path.n_breakpoints(); ++k) {
        os << csv::format(path.times()[k]);
        for (std::size_t i = 0; i < path.n_components(); ++i)
            os << ',' << csv::format(path.breakpoint_value(k, i));
        os << '\n';
    }
}

DrivingPath read_path_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("path csv: missing header");
    const auto header = csv::split(line);
    if (header.size() < 2 || header[0] != "t") throw std::invalid_argument("path csv: bad header");
    const std::size_t n = header.size() - 1;
    std::vector<double> times;
    std::vector<double> values;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cols = csv::split(line);
        if (cols.size() != n + 1) throw std::invalid_argument("path csv: ragged row");
        times.push_back(csv::parse_double(cols[0]));
        for (std::size_t i = 0; i < n; ++i) values.push_back(csv::parse_double(cols[i + 1]));
    }
    return DrivingPath::from_breakpoints(std::move(times), std::move(values), n);
}

}  // namespace sscl
