#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "sscl/field.hpp"

namespace sscl {

/// chi(u, xi) = +1 on 0 <= xi <= u, -1 on u <= xi <= 0, 0 elsewhere (and 0 at u = xi = 0).
int chi(double u, double xi) noexcept;

/// Uniform bins in xi.
struct XiGrid {
    double lo = -1.0;
    double hi = 1.0;
    std::size_t bins = 128;

    double width() const noexcept { return (hi - lo) / static_cast<double>(bins); }
    double edge(std::size_t b) const noexcept { return lo + width() * static_cast<double>(b); }
    double center(std::size_t b) const noexcept { return lo + width() * (static_cast<double>(b) + 0.5); }
    std::vector<double> centers() const;

    /// [-R - d, R + d] with d = pad * 2R; R = 1 when the bound is zero.
    static XiGrid covering(double bound, std::size_t bins, double pad = 0.05);
};

/// Pointwise chi(u_k, xi_j), row-major (cell, xi). Throws when the xi grid does not
/// cover [min(u, 0), max(u, 0)].
std::vector<double> chi_field(const Field& u, std::span<const double> xi);

/// Bin averages of chi(u_k, .), row-major (cell, bin).
std::vector<double> chi_field_binned(const Field& u, const XiGrid& grid);

/// Kruzkov decrease (integral |before - c| - integral |after - c|) / 2 at every c,
/// written into `out`. O((n + C) log n) through sorted prefix sums.
void kruzkov_decrease(const Field& before, const Field& after, std::span<const double> c,
                      std::span<double> out);

/// Integral over x of (|after| - max(|c|, |before|))_+ on the side of zero where u lives:
/// the exact time integral of chi(u, c) * k u for the growth u' = k u, k >= 0.
void growth_density(const Field& before, const Field& after, std::span<const double> c,
                    std::span<double> out);

/// Discrete kinetic measure binned in (time bucket, xi), optionally also in cell.
class KineticLedger {
public:
    KineticLedger() = default;
    /// `cells` > 0 enables the cell-resolved arrays.
    KineticLedger(XiGrid grid, std::size_t buckets, std::vector<int> moments = {0},
                  std::size_t cells = 0);

    const XiGrid& grid() const noexcept { return grid_; }
    std::size_t buckets() const noexcept { return buckets_; }
    std::size_t bins() const noexcept { return grid_.bins; }
    std::size_t cells() const noexcept { return cells_; }
    bool cell_resolved() const noexcept { return cells_ > 0; }
    const std::vector<int>& moment_orders() const noexcept { return moment_orders_; }

    /// Adds the entropy decrease between two states; returns the bucket total.
    double accumulate(const Field& before, const Field& after, std::size_t bucket);
    /// Adds the negative part produced by an exact growth step |before| -> |after|.
    /// With `into_pos` the density is booked as dissipation instead (decay steps are
    /// passed with the states swapped).
    double accumulate_growth(const Field& before, const Field& after, std::size_t bucket,
                             bool into_pos = false);
    /// Adds per-cell densities D[cell * bins + b] (x-integrated, per unit xi) and their
    /// time moments sum D * s.
    void accumulate_cells(std::span<const double> density, std::span<const double> time_moment,
                          std::size_t bucket);

    double mass_pos(std::size_t bucket, std::size_t bin) const { return pos_[bucket * bins() + bin]; }
    double mass_neg(std::size_t bucket, std::size_t bin) const { return neg_[bucket * bins() + bin]; }
    double total_pos() const noexcept;
    double total_neg() const noexcept;
    double total_variation() const noexcept { return total_pos() + total_neg(); }
    /// Sum over bins of |c|^m times mass_pos (resp. mass_neg); throws if m was not cached.
    double moment_pos(int m) const;
    double moment_neg(int m) const;
    /// Largest negative roundoff clipped away from positive increments.
    double clipped() const noexcept { return clipped_; }

    /// Cell-resolved masses and time moments, row-major (cell, bin).
    std::span<const double> cell_mass(std::size_t bucket) const;
    std::span<const double> cell_time_moment(std::size_t bucket) const;

    /// Elementwise sum; grids and shapes must match.
    void merge(const KineticLedger& other);

private:
    std::size_t moment_slot(int m) const;

    XiGrid grid_;
    std::size_t buckets_ = 0;
    std::size_t cells_ = 0;
    std::vector<int> moment_orders_;
    std::vector<double> pos_;
    std::vector<double> neg_;
    std::vector<double> moment_pos_;
    std::vector<double> moment_neg_;
    std::vector<double> cell_pos_;
    std::vector<double> cell_time_;
    std::vector<double> scratch_;
    double clipped_ = 0.0;
};

/// Header `bucket,xi_center,mass_pos,mass_neg`.
void write_ledger_csv(const KineticLedger& ledger, std::ostream& os);

}  // namespace sscl
