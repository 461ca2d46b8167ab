#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sscl/field.hpp"
#include "sscl/flux.hpp"
#include "sscl/pathwise.hpp"

namespace sscl {

/// Everything a replica needs apart from its seed.
struct EnsembleSpec {
    Field u0;
    FluxSpec flux;
    double horizon = 1.0;
    std::size_t segments = 64;   // coarse Brownian segments
    int refine_levels = 0;       // dyadic bridge refinements on top
    double source_coeff = 0.0;
    bool deterministic = false;  // identity path instead of Brownian
    RecordOptions record;
};

/// Mean and standard error of one recorded quantity across replicas.
struct Series {
    std::string name;
    std::vector<double> mean;
    std::vector<double> stderr_;
};

struct EnsembleTrace {
    std::vector<double> times;
    std::vector<Series> series;  // l1_to_mean, l2, l2pm, bv, linf, w_lambda_<l>...
    std::size_t n_replicas = 0;
    std::vector<std::uint64_t> seeds;  // sorted
    std::vector<double> ledger_pos;    // per replica, seed order
    std::vector<double> ledger_neg;

    const Series& get(const std::string& name) const;
};

/// One pathwise solve per replica with seed derive(base_seed, index); aggregation runs
/// in increasing seed order so the result is independent of `threads`.
EnsembleTrace run_ensemble(const EnsembleSpec& spec, std::size_t n_replicas, std::uint64_t base_seed,
                           std::size_t threads = 1);

/// Single replica, exposed for reuse.
SolveRecord run_replica(const EnsembleSpec& spec, std::uint64_t seed);

struct RateFit {
    double tmin = 0.0;
    double tmax = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double slope_lo = 0.0;
    double slope_hi = 0.0;
    std::size_t points = 0;
    bool truncated = false;  // window cut at a non-positive mean
};

/// Least squares of log(mean) on log(t) over times in [tmin, tmax]; 95% interval from
/// the delta method with the per-time standard errors.
RateFit fit_rate(const EnsembleTrace& trace, const std::string& series, double tmin, double tmax);
RateFit fit_rate(std::span<const double> t, std::span<const double> mean, std::span<const double> stderr_,
                 double tmin, double tmax);

/// {1, r, r^2, ...} up to the horizon.
std::vector<double> geometric_times(double horizon, double ratio = 1.25, double start = 1.0);

struct RegularityRow {
    double lambda = 0.0;
    std::size_t cells = 0;
    double value = 0.0;  // (1/T) E integral_0^T ||u||_{W^{lambda,1}} dt
    double stderr_ = 0.0;
};

struct RegularityReport {
    std::vector<RegularityRow> rows;
    /// ratios[l][k] = value(level k + 1) / value(level k) for lambdas[l].
    std::vector<double> lambdas;
    std::vector<std::vector<double>> ratios;
};

/// Runs the ensemble once per grid size (same seeds on every level) and time-averages
/// the W^{lambda,1} trace by the trapezoid rule over the recorded times.
RegularityReport regularity_study(const std::function<EnsembleSpec(std::size_t cells)>& make_spec,
                                  const std::vector<double>& lambdas, const std::vector<std::size_t>& cells,
                                  std::size_t n_replicas, std::uint64_t base_seed, std::size_t threads = 1);

/// Header `t,mean,stderr,n`.
void write_ensemble_csv(const EnsembleTrace& trace, const std::string& series, std::ostream& os);
/// Header `tmin,tmax,slope,slope_lo,slope_hi,r2` and one row.
void write_fit_csv(const RateFit& fit, std::ostream& os);

}  // namespace sscl
