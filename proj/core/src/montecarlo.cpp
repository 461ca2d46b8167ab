#include "sscl/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "sscl/csv.hpp"
#include "sscl/error.hpp"
#include "sscl/parallel.hpp"
#include "sscl/rng.hpp"
#include "sscl/stats.hpp"

namespace sscl {

namespace {

std::vector<std::string> series_names(const std::vector<double>& lambdas) {
    std::vector<std::string> names{"l1_to_mean", "l2", "l2pm", "bv", "linf"};
    for (double l : lambdas) names.push_back("w_lambda_" + csv::format(l));
    return names;
}

std::vector<double> flatten(const NormSample& s) {
    std::vector<double> v{s.l1_to_mean, s.l2, s.l2pm, s.bv, s.linf};
    v.insert(v.end(), s.w_lambda.begin(), s.w_lambda.end());
    return v;
}

struct ReplicaResult {
    std::vector<double> times;
    std::vector<std::vector<double>> values;  // (time, series)
    double pos = 0.0;
    double neg = 0.0;
};

}  // namespace

const Series& EnsembleTrace::get(const std::string& name) const {
    for (const auto& s : series)
        if (s.name == name) return s;
    throw std::invalid_argument("ensemble has no series '" + name + "'");
}

SolveRecord run_replica(const EnsembleSpec& spec, std::uint64_t seed) {
    const std::size_t N = spec.flux.n_components();
    if (spec.deterministic) {
        const DrivingPath path = DrivingPath::identity(N, spec.horizon, spec.segments).refine(spec.refine_levels);
        return solve_with_source(spec.u0, spec.flux, path, spec.source_coeff, spec.record);
    }
    const DrivingPath path =
        DrivingPath::sample_brownian(seed, N, spec.horizon, spec.segments).refine(spec.refine_levels);
    SolveRecord r = solve_with_source(spec.u0, spec.flux, path, spec.source_coeff, spec.record);
    r.seed = seed;
    return r;
}

EnsembleTrace run_ensemble(const EnsembleSpec& spec, std::size_t n_replicas, std::uint64_t base_seed,
                           std::size_t threads) {
    if (n_replicas == 0) throw std::invalid_argument("ensemble needs at least one replica");
    std::vector<std::uint64_t> seeds(n_replicas);
    for (std::size_t k = 0; k < n_replicas; ++k) seeds[k] = rng::derive(base_seed, k);

    std::vector<ReplicaResult> results(n_replicas);
    parallel_for(n_replicas, threads, [&](std::size_t k) {
        try {
            const SolveRecord rec = run_replica(spec, seeds[k]);
            ReplicaResult& out = results[k];
            out.times = rec.times;
            for (const auto& s : rec.trace) out.values.push_back(flatten(s));
            if (rec.ledger.buckets() > 0) {
                out.pos = rec.ledger.total_pos();
                out.neg = rec.ledger.total_neg();
            }
        } catch (NumericalFailure& e) {
            e.set_seed(seeds[k]);
            throw;
        }
    });

    std::vector<std::size_t> order(n_replicas);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return seeds[a] < seeds[b]; });

    EnsembleTrace trace;
    trace.n_replicas = n_replicas;
    trace.times = results.front().times;
    const auto names = series_names(spec.record.w_lambdas);
    const double n = static_cast<double>(n_replicas);
    for (std::size_t s = 0; s < names.size(); ++s) {
        Series ser;
        ser.name = names[s];
        for (std::size_t t = 0; t < trace.times.size(); ++t) {
            double mean = 0.0;
            for (std::size_t k : order) mean += results[k].values[t][s];
            mean /= n;
            double var = 0.0;
            for (std::size_t k : order) {
                const double d = results[k].values[t][s] - mean;
                var += d * d;
            }
            ser.mean.push_back(mean);
            ser.stderr_.push_back(n_replicas > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0);
        }
        trace.series.push_back(std::move(ser));
    }
    for (std::size_t k : order) {
        trace.seeds.push_back(seeds[k]);
        trace.ledger_pos.push_back(results[k].pos);
        trace.ledger_neg.push_back(results[k].neg);
    }
    return trace;
}

RateFit fit_rate(std::span<const double> t, std::span<const double> mean, std::span<const double> se,
                 double tmin, double tmax) {
    if (t.size() != mean.size() || t.size() != se.size()) throw std::invalid_argument("trace arrays differ in length");
    if (!(tmin > 0.0 && tmax > tmin)) throw std::invalid_argument("bad fit window");
    RateFit fit;
    std::vector<double> x, y, rel;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < tmin * (1.0 - 1e-12) || t[k] > tmax * (1.0 + 1e-12)) continue;
        if (!(mean[k] > 0.0)) {
            fit.truncated = true;
            break;
        }
        x.push_back(std::log(t[k]));
        y.push_back(std::log(mean[k]));
        rel.push_back(se[k] / mean[k]);
    }
    if (x.size() < 6) throw std::invalid_argument("rate fit needs at least 6 positive points in the window");
    const LinearFit lf = least_squares(x, y);
    fit.tmin = std::exp(x.front());
    fit.tmax = std::exp(x.back());
    fit.slope = lf.slope;
    fit.intercept = lf.intercept;
    fit.r_squared = lf.r_squared;
    fit.points = x.size();
    double var = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double w = (x[k] - lf.x_mean) / lf.sxx;
        var += w * w * rel[k] * rel[k];
    }
    const double half = 1.959963984540054 * std::sqrt(var);
    fit.slope_lo = fit.slope - half;
    fit.slope_hi = fit.slope + half;
    return fit;
}

RateFit fit_rate(const EnsembleTrace& trace, const std::string& series, double tmin, double tmax) {
    const Series& s = trace.get(series);
    return fit_rate(trace.times, s.mean, s.stderr_, tmin, tmax);
}

std::vector<double> geometric_times(double horizon, double ratio, double start) {
    if (!(ratio > 1.0 && start > 0.0 && horizon >= start)) throw std::invalid_argument("bad geometric time grid");
    std::vector<double> t;
    for (double v = start; v <= horizon * (1.0 + 1e-12); v *= ratio) t.push_back(std::min(v, horizon));
    return t;
}

RegularityReport regularity_study(const std::function<EnsembleSpec(std::size_t cells)>& make_spec,
                                  const std::vector<double>& lambdas, const std::vector<std::size_t>& cells,
                                  std::size_t n_replicas, std::uint64_t base_seed, std::size_t threads) {
    if (lambdas.empty() || cells.size() < 2) throw std::invalid_argument("regularity study needs lambdas and >= 2 grids");
    RegularityReport rep;
    rep.lambdas = lambdas;
    std::vector<std::vector<double>> values(lambdas.size());
    for (std::size_t c : cells) {
        EnsembleSpec spec = make_spec(c);
        spec.record.w_lambdas = lambdas;
        spec.record.ledger = false;
        const EnsembleTrace tr = run_ensemble(spec, n_replicas, base_seed, threads);
        const double T = tr.times.back() - tr.times.front();
        for (std::size_t l = 0; l < lambdas.size(); ++l) {
            const Series& s = tr.get("w_lambda_" + csv::format(lambdas[l]));
            double integral = 0.0;
            double err = 0.0;
            for (std::size_t k = 0; k + 1 < tr.times.size(); ++k) {
                const double d = tr.times[k + 1] - tr.times[k];
                integral += 0.5 * d * (s.mean[k] + s.mean[k + 1]);
                err += 0.5 * d * (s.stderr_[k] + s.stderr_[k + 1]);
            }
            rep.rows.push_back({lambdas[l], c, integral / T, err / T});
            values[l].push_back(integral / T);
        }
    }
    for (std::size_t l = 0; l < lambdas.size(); ++l) {
        std::vector<double> r;
        for (std::size_t k = 0; k + 1 < values[l].size(); ++k) r.push_back(values[l][k + 1] / values[l][k]);
        rep.ratios.push_back(std::move(r));
    }
    return rep;
}

void write_ensemble_csv(const EnsembleTrace& trace, const std::string& series, std::ostream& os) {
    const Series& s = trace.get(series);
    os << "t,mean,stderr,n\n";
    for (std::size_t k = 0; k < trace.times.size(); ++k)
        os << csv::format(trace.times[k]) << ',' << csv::format(s.mean[k]) << ',' << csv::format(s.stderr_[k]) << ','
           << trace.n_replicas << '\n';
}

void write_fit_csv(const RateFit& fit, std::ostream& os) {
    os << "tmin,tmax,slope,slope_lo,slope_hi,r2\n"
       << csv::format(fit.tmin) << ',' << csv::format(fit.tmax) << ',' << csv::format(fit.slope) << ','
       << csv::format(fit.slope_lo) << ',' << csv::format(fit.slope_hi) << ',' << csv::format(fit.r_squared) << '\n';
}

}  // namespace sscl
