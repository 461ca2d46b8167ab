#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sscl/field.hpp"
#include "sscl/flux.hpp"
#include "sscl/fv.hpp"
#include "sscl/kinetic.hpp"
#include "sscl/paths.hpp"

namespace sscl {

struct RecordOptions {
    /// Instants in (0, horizon] at which the state is measured; t = 0 is always recorded.
    std::vector<double> times;
    bool snapshots = false;
    bool ledger = true;
    std::size_t xi_bins = 128;
    /// Bound used to size the xi grid; 0 means max |u0| (times the growth factor with a source).
    double xi_bound = 0.0;
    bool cell_resolved = false;
    std::vector<double> w_lambdas;
    SweepOptions sweep;
};

struct NormSample {
    double t = 0.0;
    double mean = 0.0;
    double l1_to_mean = 0.0;
    double l2 = 0.0;
    double l2pm = 0.0;  // L^(2+m) with m the flux growth exponent
    double bv = 0.0;
    double linf = 0.0;
    std::vector<double> w_lambda;
};

/// Ledger time buckets are the intervals between consecutive recorded instants,
/// plus a final one up to the horizon.
struct SolveRecord {
    std::vector<double> times;
    std::vector<NormSample> trace;
    std::vector<Field> snapshots;
    KineticLedger ledger;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    double mean0 = 0.0;
    int growth_m = 0;
    std::vector<double> w_lambdas;
    Field initial;
    Field final_state;
};

SolveRecord solve(const Field& u0, const FluxSpec& flux, const DrivingPath& path,
                  const RecordOptions& record = {});

/// Identity path beta_i(t) = t with 64 segments per unit time.
SolveRecord solve_deterministic(const Field& u0, const FluxSpec& flux, double horizon,
                                const RecordOptions& record = {});

/// Transport then u <- u exp(coeff dt) on every piece of the path.
SolveRecord solve_with_source(const Field& u0, const FluxSpec& flux, const DrivingPath& path,
                              double source_coeff, const RecordOptions& record = {});

/// ||u0||_{m+2}^{m+2} - ||u(T)||_{m+2}^{m+2} - (m+2)(m+1) (positive minus negative ledger moment).
double energy_balance_defect(const SolveRecord& record, int moment_m);

/// Header `t,l1_to_mean,l2,l2pm,bv,w_lambda_<l>...` preceded by `# ` comment lines.
void write_record_csv(const SolveRecord& record, std::ostream& os,
                      const std::vector<std::string>& comments = {});

}  // namespace sscl
