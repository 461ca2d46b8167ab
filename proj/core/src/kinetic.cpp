#include "sscl/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "sscl/csv.hpp"

namespace sscl {

int chi(double u, double xi) noexcept {
    if (xi >= 0.0 && xi <= u && u > 0.0) return 1;
    if (xi <= 0.0 && xi >= u && u < 0.0) return -1;
    return 0;
}

std::vector<double> XiGrid::centers() const {
    std::vector<double> c(bins);
    for (std::size_t b = 0; b < bins; ++b) c[b] = center(b);
    return c;
}

XiGrid XiGrid::covering(double bound, std::size_t bins, double pad) {
    if (bins == 0) throw std::invalid_argument("xi grid needs at least one bin");
    const double r = bound > 0.0 ? bound : 1.0;
    const double d = pad * 2.0 * r;
    return XiGrid{-r - d, r + d, bins};
}

std::vector<double> chi_field(const Field& u, std::span<const double> xi) {
    if (xi.empty()) throw std::invalid_argument("empty xi grid");
    const auto [lo, hi] = std::minmax_element(xi.begin(), xi.end());
    if (std::min(u.min(), 0.0) < *lo || std::max(u.max(), 0.0) > *hi)
        throw std::invalid_argument("xi grid does not cover the field's range");
    std::vector<double> out(u.size() * xi.size());
    for (std::size_t k = 0; k < u.size(); ++k)
        for (std::size_t j = 0; j < xi.size(); ++j) out[k * xi.size() + j] = chi(u[k], xi[j]);
    return out;
}

std::vector<double> chi_field_binned(const Field& u, const XiGrid& grid) {
    if (std::min(u.min(), 0.0) < grid.lo || std::max(u.max(), 0.0) > grid.hi)
        throw std::invalid_argument("xi grid does not cover the field's range");
    const std::size_t B = grid.bins;
    const double h = grid.width();
    std::vector<double> out(u.size() * B, 0.0);
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double v = u[k];
        if (v == 0.0) continue;
        const double a = std::min(v, 0.0);
        const double b = std::max(v, 0.0);
        const double sg = v > 0.0 ? 1.0 : -1.0;
        const auto first = static_cast<std::size_t>(std::clamp(std::floor((a - grid.lo) / h), 0.0, double(B - 1)));
        const auto last = static_cast<std::size_t>(std::clamp(std::floor((b - grid.lo) / h), 0.0, double(B - 1)));
        for (std::size_t j = first; j <= last; ++j) {
            const double e0 = grid.edge(j);
            const double e1 = e0 + h;
            const double overlap = std::max(0.0, std::min(b, e1) - std::max(a, e0));
            out[k * B + j] = sg * overlap / h;
        }
    }
    return out;
}

namespace {

// sum_k |u_k - c| for every c, from sorted values and prefix sums.
void abs_sums(std::span<const double> values, std::span<const double> c, std::vector<double>& sorted,
              std::vector<double>& prefix, std::span<double> out, double sign) {
    sorted.assign(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    prefix.resize(sorted.size() + 1);
    prefix[0] = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) prefix[k + 1] = prefix[k] + sorted[k];
    const double n = static_cast<double>(sorted.size());
    const double total = prefix.back();
    for (std::size_t j = 0; j < c.size(); ++j) {
        const auto k = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), c[j]) - sorted.begin());
        const double kd = static_cast<double>(k);
        const double below = c[j] * kd - prefix[k];
        const double above = (total - prefix[k]) - c[j] * (n - kd);
        out[j] += sign * (below + above);
    }
}

}  // namespace

void kruzkov_decrease(const Field& before, const Field& after, std::span<const double> c,
                      std::span<double> out) {
    if (!before.same_shape(after)) throw std::invalid_argument("fields differ in shape");
    if (out.size() != c.size()) throw std::invalid_argument("output size mismatch");
    std::fill(out.begin(), out.end(), 0.0);
    std::vector<double> sorted, prefix;
    abs_sums(before.data(), c, sorted, prefix, out, 1.0);
    abs_sums(after.data(), c, sorted, prefix, out, -1.0);
    const double scale = 0.5 * before.cell_volume();
    for (double& v : out) v *= scale;
}

void growth_density(const Field& before, const Field& after, std::span<const double> c,
                    std::span<double> out) {
    if (!before.same_shape(after)) throw std::invalid_argument("fields differ in shape");
    if (out.size() != c.size()) throw std::invalid_argument("output size mismatch");
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t k = 0; k < before.size(); ++k) {
        const double ub = before[k];
        const double ua = after[k];
        if (ub == 0.0) continue;
        for (std::size_t j = 0; j < c.size(); ++j) {
            if ((c[j] > 0.0) != (ub > 0.0) || c[j] == 0.0) continue;
            out[j] += std::max(0.0, std::abs(ua) - std::max(std::abs(c[j]), std::abs(ub)));
        }
    }
    for (double& v : out) v *= before.cell_volume();
}

KineticLedger::KineticLedger(XiGrid grid, std::size_t buckets, std::vector<int> moments, std::size_t cells)
    : grid_(grid), buckets_(buckets), cells_(cells), moment_orders_(std::move(moments)) {
    if (buckets == 0) throw std::invalid_argument("ledger needs at least one time bucket");
    if (std::find(moment_orders_.begin(), moment_orders_.end(), 0) == moment_orders_.end())
        moment_orders_.insert(moment_orders_.begin(), 0);
    for (int m : moment_orders_)
        if (m < 0) throw std::invalid_argument("moment orders must be nonnegative");
    pos_.assign(buckets * grid.bins, 0.0);
    neg_.assign(buckets * grid.bins, 0.0);
    moment_pos_.assign(moment_orders_.size(), 0.0);
    moment_neg_.assign(moment_orders_.size(), 0.0);
    if (cells > 0) {
        cell_pos_.assign(buckets * cells * grid.bins, 0.0);
        cell_time_.assign(buckets * cells * grid.bins, 0.0);
    }
}

double KineticLedger::accumulate(const Field& before, const Field& after, std::size_t bucket) {
    if (bucket >= buckets_) throw std::out_of_range("ledger bucket out of range");
    const auto c = grid_.centers();
    scratch_.resize(c.size());
    kruzkov_decrease(before, after, c, scratch_);
    const double h = grid_.width();
    double total = 0.0;
    for (std::size_t b = 0; b < c.size(); ++b) {
        double m = scratch_[b] * h;
        if (m < 0.0) {
            clipped_ = std::max(clipped_, -m);
            m = 0.0;
        }
        pos_[bucket * bins() + b] += m;
        total += m;
        for (std::size_t s = 0; s < moment_orders_.size(); ++s)
            moment_pos_[s] += std::pow(std::abs(c[b]), moment_orders_[s]) * m;
    }
    return total;
}

double KineticLedger::accumulate_growth(const Field& before, const Field& after, std::size_t bucket,
                                        bool into_pos) {
    if (bucket >= buckets_) throw std::out_of_range("ledger bucket out of range");
    const auto c = grid_.centers();
    scratch_.resize(c.size());
    growth_density(before, after, c, scratch_);
    const double h = grid_.width();
    double total = 0.0;
    for (std::size_t b = 0; b < c.size(); ++b) {
        const double m = scratch_[b] * h;
        (into_pos ? pos_ : neg_)[bucket * bins() + b] += m;
        total += m;
        auto& moments = into_pos ? moment_pos_ : moment_neg_;
        for (std::size_t s = 0; s < moment_orders_.size(); ++s)
            moments[s] += std::pow(std::abs(c[b]), moment_orders_[s]) * m;
    }
    return total;
}

void KineticLedger::accumulate_cells(std::span<const double> density, std::span<const double> time_moment,
                                     std::size_t bucket) {
    if (!cell_resolved()) throw std::invalid_argument("ledger is not cell-resolved");
    if (bucket >= buckets_) throw std::out_of_range("ledger bucket out of range");
    const std::size_t n = cells_ * bins();
    if (density.size() != n || time_moment.size() != n) throw std::invalid_argument("cell density shape mismatch");
    const double h = grid_.width();
    double* mass = cell_pos_.data() + bucket * n;
    double* tm = cell_time_.data() + bucket * n;
    for (std::size_t k = 0; k < n; ++k) {
        mass[k] += density[k] * h;
        tm[k] += time_moment[k] * h;
    }
}

double KineticLedger::total_pos() const noexcept {
    double s = 0.0;
    for (double v : pos_) s += v;
    return s;
}

double KineticLedger::total_neg() const noexcept {
    double s = 0.0;
    for (double v : neg_) s += v;
    return s;
}

std::size_t KineticLedger::moment_slot(int m) const {
    const auto it = std::find(moment_orders_.begin(), moment_orders_.end(), m);
    if (it == moment_orders_.end()) throw std::invalid_argument("ledger does not cache that moment");
    return static_cast<std::size_t>(it - moment_orders_.begin());
}

double KineticLedger::moment_pos(int m) const { return moment_pos_[moment_slot(m)]; }
double KineticLedger::moment_neg(int m) const { return moment_neg_[moment_slot(m)]; }

std::span<const double> KineticLedger::cell_mass(std::size_t bucket) const {
    if (!cell_resolved()) throw std::invalid_argument("ledger is not cell-resolved");
    const std::size_t n = cells_ * bins();
    return std::span<const double>(cell_pos_).subspan(bucket * n, n);
}

std::span<const double> KineticLedger::cell_time_moment(std::size_t bucket) const {
    if (!cell_resolved()) throw std::invalid_argument("ledger is not cell-resolved");
    const std::size_t n = cells_ * bins();
    return std::span<const double>(cell_time_).subspan(bucket * n, n);
}

void KineticLedger::merge(const KineticLedger& other) {
    if (other.grid_.lo != grid_.lo || other.grid_.hi != grid_.hi || other.grid_.bins != grid_.bins ||
        other.buckets_ != buckets_ || other.cells_ != cells_ || other.moment_orders_ != moment_orders_)
        throw std::invalid_argument("ledgers have different layouts");
    auto add = [](std::vector<double>& a, const std::vector<double>& b) {
        for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    };
    add(pos_, other.pos_);
    add(neg_, other.neg_);
    add(moment_pos_, other.moment_pos_);
    add(moment_neg_, other.moment_neg_);
    add(cell_pos_, other.cell_pos_);
    add(cell_time_, other.cell_time_);
    clipped_ = std::max(clipped_, other.clipped_);
}

void write_ledger_csv(const KineticLedger& ledger, std::ostream& os) {
    os << "bucket,xi_center,mass_pos,mass_neg\n";
    for (std::size_t t = 0; t < ledger.buckets(); ++t)
        for (std::size_t b = 0; b < ledger.bins(); ++b)
            os << t << ',' << csv::format(ledger.grid().center(b)) << ',' << csv::format(ledger.mass_pos(t, b))
               << ',' << csv::format(ledger.mass_neg(t, b)) << '\n';
}

}  // namespace sscl
