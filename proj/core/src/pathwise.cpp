#include "sscl/pathwise.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "sscl/csv.hpp"
#include "sscl/error.hpp"
#include "sscl/sobolev.hpp"

namespace sscl {

namespace {

NormSample measure(const Field& u, double t, double mean0, int m, const std::vector<double>& lambdas) {
    NormSample s;
    s.t = t;
    s.mean = u.mean();
    s.l1_to_mean = u.l1_to(mean0);
    s.l2 = u.lp(2.0);
    s.l2pm = u.lp(2.0 + m);
    s.bv = u.bv();
    s.linf = u.linf();
    for (double l : lambdas) s.w_lambda.push_back(w_lambda_1_norm(u, l));
    return s;
}

SolveRecord run(const Field& u0, const FluxSpec& flux, const DrivingPath& path, double source,
                const RecordOptions& opt) {
    const std::size_t N = flux.n_components();
    if (path.n_components() != N || u0.dim() != N)
        throw std::invalid_argument("field, flux and path dimensions differ");
    if (!u0.all_finite()) throw std::invalid_argument("initial data is not finite");
    const double horizon = path.horizon();
    for (std::size_t k = 0; k < opt.times.size(); ++k) {
        if (!(opt.times[k] > 0.0 && opt.times[k] <= horizon))
            throw std::invalid_argument("record times must lie in (0, horizon]");
        if (k > 0 && !(opt.times[k] > opt.times[k - 1]))
            throw std::invalid_argument("record times must be increasing");
    }

    SolveRecord rec;
    rec.seed = path.seed();
    rec.mean0 = u0.mean();
    rec.growth_m = flux.growth_m;
    rec.w_lambdas = opt.w_lambdas;
    rec.initial = u0;
    rec.times.push_back(0.0);
    rec.trace.push_back(measure(u0, 0.0, rec.mean0, flux.growth_m, opt.w_lambdas));
    if (opt.snapshots) rec.snapshots.push_back(u0);

    double bound = opt.xi_bound > 0.0 ? opt.xi_bound : u0.linf();
    if (opt.xi_bound <= 0.0 && source > 0.0) bound *= std::exp(source * horizon);
    const XiGrid grid = XiGrid::covering(bound, opt.xi_bins);
    const std::size_t n_buckets = opt.times.size() + 1;
    std::vector<int> moments{0};
    if (flux.growth_m != 0) moments.push_back(flux.growth_m);
    if (opt.ledger)
        rec.ledger = KineticLedger(grid, n_buckets, moments, opt.cell_resolved ? u0.size() : 0);

    DissipationSample sample;
    if (opt.ledger && opt.cell_resolved) sample = DissipationSample(grid.centers(), u0.size(), true);
    std::vector<double> moment_buf;

    std::vector<ScalarFlux> forward, backward;
    for (std::size_t i = 0; i < N; ++i) {
        forward.push_back(flux.component(i));
        backward.push_back(forward.back().negated());
    }

    Field u = u0;
    Field before;
    std::size_t next = 0;  // next record index
    std::vector<double> db(N);

    auto advance = [&](double t0, double dt, std::span<const double> dbeta) {
        const std::size_t bucket = next;
        if (opt.ledger) before = u;
        if (opt.ledger && opt.cell_resolved) sample.reset();
        DissipationSample* sp = opt.ledger && opt.cell_resolved ? &sample : nullptr;
        try {
            if (N == 1) {
                sweep_1d(u, 0, dbeta[0] < 0.0 ? backward[0] : forward[0], std::abs(dbeta[0]), opt.sweep, sp);
            } else {
                strang_split_2d(u, flux, dbeta, opt.sweep, sp);
            }
        } catch (const NumericalFailure&) {
            throw NumericalFailure("non-finite state", t0, path.seed());
        }
        if (opt.ledger) {
            rec.ledger.accumulate(before, u, bucket);
            if (opt.cell_resolved) {
                moment_buf.resize(sample.cell.size());
                for (std::size_t k = 0; k < moment_buf.size(); ++k)
                    moment_buf[k] = t0 * sample.cell[k] + dt * sample.cell_moment[k];
                rec.ledger.accumulate_cells(sample.cell, moment_buf, bucket);
            }
        }
        if (source != 0.0) {
            if (opt.ledger) before = u;
            const double g = std::exp(source * dt);
            for (auto& v : u.data()) v *= g;
            if (!u.all_finite()) throw NumericalFailure("non-finite state after source step", t0, path.seed());
            if (opt.ledger) {
                if (source > 0.0) rec.ledger.accumulate_growth(before, u, bucket);
                else rec.ledger.accumulate_growth(u, before, bucket, true);
            }
        }
    };

    for (const auto& seg : path.segments()) {
        double t0 = seg.t0;
        const double t_end = seg.t0 + seg.dt;
        double done = 0.0;  // fraction of the segment already applied
        while (next < opt.times.size() && opt.times[next] <= t_end) {
            const double tau = opt.times[next];
            const double frac = (tau - seg.t0) / seg.dt;
            if (frac > done) {
                for (std::size_t i = 0; i < N; ++i) db[i] = seg.dbeta[i] * (frac - done);
                advance(t0, tau - t0, db);
            }
            done = frac;
            t0 = tau;
            rec.times.push_back(tau);
            rec.trace.push_back(measure(u, tau, rec.mean0, flux.growth_m, opt.w_lambdas));
            if (opt.snapshots) rec.snapshots.push_back(u);
            ++next;
        }
        if (done < 1.0) {
            for (std::size_t i = 0; i < N; ++i) db[i] = seg.dbeta[i] * (1.0 - done);
            advance(t0, t_end - t0, db);
        }
    }
    rec.final_state = std::move(u);
    return rec;
}

}  // namespace

SolveRecord solve(const Field& u0, const FluxSpec& flux, const DrivingPath& path, const RecordOptions& record) {
    return run(u0, flux, path, 0.0, record);
}

SolveRecord solve_deterministic(const Field& u0, const FluxSpec& flux, double horizon,
                                const RecordOptions& record) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    const auto segments = static_cast<std::size_t>(std::ceil(horizon * 64.0));
    return run(u0, flux, DrivingPath::identity(flux.n_components(), horizon, segments), 0.0, record);
}

SolveRecord solve_with_source(const Field& u0, const FluxSpec& flux, const DrivingPath& path,
                              double source_coeff, const RecordOptions& record) {
    if (!std::isfinite(source_coeff)) throw std::invalid_argument("source coefficient must be finite");
    return run(u0, flux, path, source_coeff, record);
}

double energy_balance_defect(const SolveRecord& record, int moment_m) {
    if (record.ledger.buckets() == 0) throw std::invalid_argument("record has no ledger");
    const double p = moment_m + 2.0;
    const double k = (moment_m + 2.0) * (moment_m + 1.0);
    const double m = record.ledger.moment_pos(moment_m) - record.ledger.moment_neg(moment_m);
    return record.initial.lp_power(p) - record.final_state.lp_power(p) - k * m;
}

void write_record_csv(const SolveRecord& record, std::ostream& os, const std::vector<std::string>& comments) {
    for (const auto& c : comments) os << "# " << c << '\n';
    os << "t,l1_to_mean,l2,l2pm,bv";
    for (double l : record.w_lambdas) os << ",w_lambda_" << csv::format(l);
    os << '\n';
    for (const auto& s : record.trace) {
        os << csv::format(s.t) << ',' << csv::format(s.l1_to_mean) << ',' << csv::format(s.l2) << ','
           << csv::format(s.l2pm) << ',' << csv::format(s.bv);
        for (double w : s.w_lambda) os << ',' << csv::format(w);
        os << '\n';
    }
}

}  // namespace sscl
