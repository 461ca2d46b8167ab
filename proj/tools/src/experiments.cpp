#include "experiments.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sscl/csv.hpp"
#include "sscl/decomposition.hpp"
#include "sscl/initial_data.hpp"
#include "sscl/lemma_b.hpp"
#include "sscl/montecarlo.hpp"
#include "sscl/nonlinearity.hpp"
#include "sscl/parallel.hpp"
#include "sscl/pathwise.hpp"
#include "sscl/rng.hpp"

namespace sscl::cli {

namespace fs = std::filesystem;

namespace {

struct Context {
    const ExperimentConfig& cfg;
    fs::path dir;
    std::ostream& log;
    std::size_t threads;

    std::ofstream open(const std::string& name) const {
        std::ofstream f(dir / name);
        if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
        return f;
    }
    std::vector<std::string> echo() const {
        std::vector<std::string> lines;
        std::istringstream in(serialize(cfg, false));
        std::string l;
        while (std::getline(in, l))
            if (!l.empty()) lines.push_back(l);
        return lines;
    }
};

std::string fmt(double x, int digits = 4) {
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

FluxSpec make_flux(const ExperimentConfig& c) { return flux_by_name(c.flux, c.flux_params, c.dimension); }

double theta_of(const ExperimentConfig& c, const FluxSpec& f) {
    if (c.theta > 0.0) return c.theta;
    if (f.theta_claimed) return *f.theta_claimed;
    throw std::invalid_argument("flux has no known exponent; set flux.theta");
}

Field make_u0(const ExperimentConfig& c) {
    if (c.cells < 2) throw std::invalid_argument("grid.cells must be at least 2");
    if (c.initial == "random_fourier") {
        // params: modes [, amplitude]; the data seed comes from the experiment seed
        if (c.initial_params.empty()) throw std::invalid_argument("random_fourier needs a mode count");
        const double data_seed = static_cast<double>(rng::derive(c.seed, 0x1d7a) >> 32);
        const std::vector<double> p{c.initial_params[0], data_seed,
                                    c.initial_params.size() > 1 ? c.initial_params[1] : 1.0};
        return make_initial(c.initial, p, c.dimension, c.cells);
    }
    return make_initial(c.initial, c.initial_params, c.dimension, c.cells);
}

std::vector<double> record_times(const ExperimentConfig& c) {
    if (c.times == "geometric") return geometric_times(c.horizon, c.time_ratio, std::min(1.0, c.horizon));
    if (c.times == "uniform") {
        if (c.time_count == 0) throw std::invalid_argument("record.time_count must be positive");
        std::vector<double> t;
        for (std::size_t k = 1; k <= c.time_count; ++k)
            t.push_back(k == c.time_count ? c.horizon : c.horizon * static_cast<double>(k) / static_cast<double>(c.time_count));
        return t;
    }
    if (c.times == "list") return c.time_list;
    throw std::invalid_argument("record.times must be geometric, uniform or list");
}

RecordOptions record_options(const ExperimentConfig& c) {
    RecordOptions r;
    r.times = record_times(c);
    r.xi_bins = c.xi_bins;
    r.w_lambdas = c.lambdas;
    r.sweep.cfl = c.cfl;
    if (c.numerical_flux == "godunov") r.sweep.scheme = NumericalFlux::godunov;
    else if (c.numerical_flux == "engquist_osher") r.sweep.scheme = NumericalFlux::engquist_osher;
    else throw std::invalid_argument("scheme.numerical_flux must be godunov or engquist_osher");
    return r;
}

DrivingPath make_path(const ExperimentConfig& c) {
    const auto levels = static_cast<int>(c.refine);
    if (c.deterministic) return DrivingPath::identity(c.dimension, c.horizon, c.segments).refine(levels);
    return DrivingPath::sample_brownian(c.seed, c.dimension, c.horizon, c.segments).refine(levels);
}

EnsembleSpec ensemble_spec(const ExperimentConfig& c, std::size_t cells) {
    ExperimentConfig local = c;
    local.cells = cells;
    EnsembleSpec s;
    s.u0 = make_u0(local);
    s.flux = make_flux(c);
    s.horizon = c.horizon;
    s.segments = c.segments;
    s.refine_levels = static_cast<int>(c.refine);
    s.source_coeff = c.source;
    s.deterministic = c.deterministic;
    s.record = record_options(c);
    return s;
}

double window_max(const ExperimentConfig& c) { return c.window_max > 0.0 ? c.window_max : c.horizon; }

std::string verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

RunResult finish(bool ok, const std::string& name, const std::string& detail) {
    RunResult r;
    r.exit_code = ok ? kPass : kCheckFail;
    r.summary = verdict(ok) + " " + name + ": " + detail;
    return r;
}

RunResult simulate(const Context& ctx) {
    const auto& c = ctx.cfg;
    const FluxSpec flux = make_flux(c);
    const Field u0 = make_u0(c);
    const DrivingPath path = make_path(c);
    RecordOptions opt = record_options(c);
    SolveRecord rec = solve_with_source(u0, flux, path, c.source, opt);
    rec.config_hash = config_hash(c);
    {
        auto f = ctx.open("path.csv");
        write_path_csv(path, f);
    }
    {
        auto f = ctx.open("record.csv");
        write_record_csv(rec, f, ctx.echo());
    }
    {
        auto f = ctx.open("ledger.csv");
        write_ledger_csv(rec.ledger, f);
    }
    {
        auto f = ctx.open("field.csv");
        write_field_csv(rec.final_state, f);
    }
    bool ok = true;
    std::string detail;
    if (c.source == 0.0) {
        double drift = 0.0;
        bool monotone = true;
        for (std::size_t k = 0; k < rec.trace.size(); ++k) {
            drift = std::max(drift, std::abs(rec.trace[k].mean - rec.mean0));
            if (k > 0 && rec.trace[k].l1_to_mean > rec.trace[k - 1].l1_to_mean * (1.0 + 1e-12) + 1e-15) monotone = false;
        }
        const bool neg_zero = rec.ledger.total_neg() == 0.0;
        ok = drift <= 1e-10 && monotone && neg_zero;
        detail = "mean drift " + fmt(drift) + ", l1-to-mean " + (monotone ? "non-increasing" : "increased") +
                 ", ledger mass " + fmt(rec.ledger.total_pos());
    } else {
        const double expected = rec.mean0 * std::exp(c.source * c.horizon);
        const double err = std::abs(rec.final_state.mean() - expected);
        ok = err <= 1e-6 * std::max(1.0, std::abs(expected));
        detail = "mean " + fmt(rec.final_state.mean(), 10) + " vs " + fmt(expected, 10) + ", negative ledger mass " +
                 fmt(rec.ledger.total_neg());
    }
    return finish(ok, "simulate", detail);
}

RunResult decay(const Context& ctx, bool deterministic) {
    ExperimentConfig c = ctx.cfg;
    c.deterministic = deterministic;
    const FluxSpec flux = make_flux(c);
    const double theta = theta_of(c, flux);
    const double rate = deterministic ? theta / (2.0 + theta) : theta / (3.0 + theta);
    EnsembleSpec spec = ensemble_spec(c, c.cells);
    spec.record.ledger = false;
    const std::size_t replicas = deterministic ? 1 : c.replicas;
    const EnsembleTrace tr = run_ensemble(spec, replicas, c.seed, ctx.threads);
    const RateFit fit = fit_rate(tr, "l1_to_mean", c.window_min, window_max(c));
    {
        auto f = ctx.open("ensemble.csv");
        for (const auto& line : ctx.echo()) f << "# " << line << '\n';
        write_ensemble_csv(tr, "l1_to_mean", f);
    }
    {
        auto f = ctx.open("fit.csv");
        write_fit_csv(fit, f);
    }
    const double bound = -(rate - c.slope_tolerance);
    const bool ok = fit.slope <= bound && !fit.truncated;
    return finish(ok, deterministic ? "decay-det" : "decay",
                  "slope " + fmt(fit.slope) + " [" + fmt(fit.slope_lo) + ", " + fmt(fit.slope_hi) + "] vs bound " +
                      fmt(bound) + (fit.truncated ? " (window truncated)" : ""));
}

std::vector<std::size_t> levels_of(const ExperimentConfig& c) {
    std::vector<std::size_t> out;
    for (double v : c.levels) {
        if (v < 2 || v != std::floor(v)) throw std::invalid_argument("ensemble.levels must be cell counts");
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.size() < 2) throw std::invalid_argument("ensemble.levels needs at least two grid sizes");
    return out;
}

bool ratios_ok(const RegularityReport& rep, double bound, std::string& detail) {
    bool ok = true;
    for (std::size_t l = 0; l < rep.lambdas.size(); ++l) {
        const auto& r = rep.ratios[l];
        const std::size_t first = r.size() >= 2 ? r.size() - 2 : 0;
        detail += " lambda " + fmt(rep.lambdas[l]) + ":";
        for (std::size_t k = first; k < r.size(); ++k) {
            detail += " " + fmt(r[k]);
            ok = ok && r[k] <= bound;
        }
    }
    return ok;
}

void write_regularity(const Context& ctx, const RegularityReport& rep) {
    auto f = ctx.open("regularity.csv");
    f << "lambda,cells,value,stderr\n";
    for (const auto& row : rep.rows)
        f << csv::format(row.lambda) << ',' << row.cells << ',' << csv::format(row.value) << ','
          << csv::format(row.stderr_) << '\n';
}

RunResult regularity(const Context& ctx) {
    const auto& c = ctx.cfg;
    if (c.lambdas.empty()) throw std::invalid_argument("record.lambdas must list at least one lambda");
    const auto rep = regularity_study([&](std::size_t n) { return ensemble_spec(c, n); }, c.lambdas, levels_of(c),
                                      c.replicas, c.seed, ctx.threads);
    write_regularity(ctx, rep);
    std::string detail = "refinement ratios";
    const bool ok = ratios_ok(rep, c.ratio_bound, detail);
    return finish(ok, "regularity", detail + " (bound " + fmt(c.ratio_bound) + ")");
}

RunResult quasi(const Context& ctx) {
    const auto& c = ctx.cfg;
    if (c.lambdas.empty()) throw std::invalid_argument("record.lambdas must list at least one lambda");
    if (c.source == 0.0) throw std::invalid_argument("quasi needs a nonzero source.coeff");
    const auto rep = regularity_study([&](std::size_t n) { return ensemble_spec(c, n); }, c.lambdas, levels_of(c),
                                      c.replicas, c.seed, ctx.threads);
    write_regularity(ctx, rep);
    EnsembleSpec spec = ensemble_spec(c, levels_of(c).back());
    const EnsembleTrace tr = run_ensemble(spec, c.replicas, c.seed, ctx.threads);
    bool ledger_ok = true;
    double min_neg = INFINITY;
    double max_tv = 0.0;
    {
        auto f = ctx.open("ledger_totals.csv");
        f << "seed,mass_pos,mass_neg,total_variation\n";
        for (std::size_t k = 0; k < tr.seeds.size(); ++k) {
            const double tv = tr.ledger_pos[k] + tr.ledger_neg[k];
            f << tr.seeds[k] << ',' << csv::format(tr.ledger_pos[k]) << ',' << csv::format(tr.ledger_neg[k]) << ','
              << csv::format(tv) << '\n';
            min_neg = std::min(min_neg, tr.ledger_neg[k]);
            max_tv = std::max(max_tv, tv);
            ledger_ok = ledger_ok && std::isfinite(tv) && tr.ledger_neg[k] > 0.0;
        }
    }
    std::string detail = "refinement ratios";
    const bool ok = ratios_ok(rep, c.ratio_bound, detail) && ledger_ok;
    return finish(ok, "quasi", detail + "; min negative mass " + fmt(min_neg) + ", max |m| " + fmt(max_tv));
}

RunResult nonlinearity(const Context& ctx) {
    const auto& c = ctx.cfg;
    const FluxSpec flux = make_flux(c);
    ThetaOptions opt;
    opt.xi_range = {c.xi_min, c.xi_max};
    opt.eps_grid = geometric_eps_grid(c.eps_max, c.eps_min, c.eps_count);
    opt.direction_samples = c.direction_samples;
    opt.shift_samples = c.shift_samples;
    opt.xi_samples = c.xi_samples;
    Condition cond;
    if (c.condition == "stochastic") cond = Condition::stochastic;
    else if (c.condition == "deterministic") cond = Condition::deterministic;
    else throw std::invalid_argument("nonlinearity.condition must be stochastic or deterministic");
    const auto rep = estimate_theta(flux, cond, opt);
    {
        auto f = ctx.open("nonlinearity.csv");
        f << "eps,sup_measure\n";
        for (std::size_t k = 0; k < rep.eps.size(); ++k)
            f << csv::format(rep.eps[k]) << ',' << csv::format(rep.sup_measure[k]) << '\n';
    }
    {
        auto f = ctx.open("theta.csv");
        f << "theta_hat,raw_slope,fit_residual,degenerate,exceeds_smooth_bound\n"
          << csv::format(rep.theta_hat) << ',' << csv::format(rep.raw_slope) << ',' << csv::format(rep.fit_residual)
          << ',' << rep.degenerate << ',' << rep.exceeds_smooth_bound << '\n';
    }
    for (const auto& w : rep.warnings) ctx.log << "warning: " << w << '\n';
    bool ok = !rep.exceeds_smooth_bound;
    std::string detail = "theta_hat " + fmt(rep.theta_hat) + (rep.degenerate ? " (degenerate)" : "");
    const double claimed = c.theta > 0.0 ? c.theta : flux.theta_claimed.value_or(0.0);
    if (claimed > 0.0 && cond == Condition::stochastic) {
        ok = ok && std::abs(rep.theta_hat - claimed) <= 0.1;
        detail += " vs claimed " + fmt(claimed);
    }
    return finish(ok, "nonlinearity", detail);
}

std::vector<Mode> parse_modes(const ExperimentConfig& c) {
    std::vector<Mode> modes;
    for (const auto& s : c.modes) {
        const auto colon = s.find(':');
        if (c.dimension == 1) {
            if (colon != std::string::npos) throw std::invalid_argument("1D modes are single integers");
            modes.push_back({std::stol(s), 0});
        } else {
            if (colon == std::string::npos) throw std::invalid_argument("2D modes are written n1:n2");
            modes.push_back({std::stol(s.substr(0, colon)), std::stol(s.substr(colon + 1))});
        }
    }
    if (modes.empty()) throw std::invalid_argument("split.modes must list at least one mode");
    return modes;
}

RunResult verify_split_cmd(const Context& ctx) {
    const auto& c = ctx.cfg;
    const FluxSpec flux = make_flux(c);
    const Field u0 = make_u0(c);
    const DrivingPath path = make_path(c);
    RecordOptions opt = record_options(c);
    opt.snapshots = true;
    opt.cell_resolved = true;
    const SolveRecord rec = solve(u0, flux, path, opt);
    const auto modes = parse_modes(c);
    const auto terms = verify_split(rec, flux, path, RegularizerSpec{c.gamma, c.alpha}, rec.times.back(), modes);
    const double tol = c.split_tolerance * u0.l1();
    bool ok = true;
    double worst = 0.0;
    {
        auto f = ctx.open("split.csv");
        f << "mode,defect\n";
        for (const auto& t : terms) {
            if (c.dimension == 1) f << t.mode[0];
            else f << t.mode[0] << ':' << t.mode[1];
            f << ',' << csv::format(t.defect) << '\n';
            worst = std::max(worst, t.defect);
            ok = ok && t.defect <= tol;
        }
    }
    return finish(ok, "verify-split", "max defect " + fmt(worst) + " vs tolerance " + fmt(tol));
}

RunResult verify_lemma(const Context& ctx) {
    const auto& c = ctx.cfg;
    const LemmaBResult closed = closed_form_lemma_b();
    bool ok = closed.pass && std::abs(closed.rhs - 2.0 * M_PI) <= 1e-4 * 2.0 * M_PI;
    std::size_t failures = 0;
    {
        auto f = ctx.open("lemma.csv");
        f << "instance,a,lhs,rhs,pass\n";
        f << "closed," << csv::format(1.0) << ',' << csv::format(closed.lhs) << ',' << csv::format(closed.rhs) << ','
          << closed.pass << '\n';
        std::vector<LemmaBInstance> inst(c.lemma_instances);
        parallel_for(inst.size(), ctx.threads, [&](std::size_t k) { inst[k] = random_lemma_b_instance(c.seed, k); });
        for (std::size_t k = 0; k < inst.size(); ++k) {
            const auto& r = inst[k].result;
            f << k << ',' << csv::format(inst[k].a) << ',' << csv::format(r.lhs) << ',' << csv::format(r.rhs) << ','
              << r.pass << '\n';
            if (!r.pass) ++failures;
        }
    }
    ok = ok && failures == 0;
    return finish(ok, "verify-lemma",
                  "closed form lhs " + fmt(closed.lhs) + " rhs " + fmt(closed.rhs, 8) + "; " +
                      std::to_string(failures) + " of " + std::to_string(c.lemma_instances) + " random instances violated");
}

RunResult scaling_u0(const Context& ctx) {
    const auto& c = ctx.cfg;
    const FluxSpec flux = make_flux(c);
    const double theta = theta_of(c, flux);
    ScalingOptions opt;
    opt.gammas = c.gammas;
    opt.alpha = c.alpha;
    opt.horizon = c.horizon;
    opt.mc_paths = c.mc_paths;
    opt.path_segments = c.scaling_segments;
    opt.xi_bins = c.xi_bins;
    opt.base_seed = c.seed;
    opt.threads = ctx.threads;
    const auto rep = u0_energy_scaling(flux, theta, make_u0(c), opt);
    {
        auto f = ctx.open("scaling.csv");
        f << "gamma,energy,stderr\n";
        for (std::size_t g = 0; g < rep.gammas.size(); ++g)
            f << csv::format(rep.gammas[g]) << ',' << csv::format(rep.energy[g]) << ',' << csv::format(rep.stderr_[g])
              << '\n';
    }
    const bool ok = !rep.degenerate && rep.worst_ratio <= 2.0;
    return finish(ok, "scaling-u0",
                  "fitted slope " + fmt(rep.slope) + ", envelope exponent " + fmt(rep.bound_exponent) +
                      ", worst energy/envelope " + fmt(rep.worst_ratio));
}

}  // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> s{"simulate",      "decay",        "decay-det",    "regularity", "quasi",
                                            "nonlinearity", "verify-split", "verify-lemma", "scaling-u0"};
    return s;
}

std::string default_out_root() {
    const char* env = std::getenv("SSCL_OUT");
    return env != nullptr && *env != '\0' ? std::string(env) : std::string("sscl_out");
}

RunResult run(const std::string& subcommand, const ExperimentConfig& cfg, const std::string& out_root,
              std::ostream& log) {
    if (cfg.dimension != 1 && cfg.dimension != 2) throw std::invalid_argument("grid.dimension must be 1 or 2");
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
    const fs::path dir = fs::path(out_root) / (subcommand + "-" + hash);
    bool known = false;
    for (const auto& s : subcommands()) known = known || s == subcommand;
    if (!known) throw std::invalid_argument("unknown subcommand '" + subcommand + "'");
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "config.ini");
        f << serialize(cfg, false);
    }
    const Context ctx{cfg, dir, log, cfg.threads == 0 ? default_threads() : cfg.threads};
    RunResult r;
    if (subcommand == "simulate") r = simulate(ctx);
    else if (subcommand == "decay") r = decay(ctx, false);
    else if (subcommand == "decay-det") r = decay(ctx, true);
    else if (subcommand == "regularity") r = regularity(ctx);
    else if (subcommand == "quasi") r = quasi(ctx);
    else if (subcommand == "nonlinearity") r = nonlinearity(ctx);
    else if (subcommand == "verify-split") r = verify_split_cmd(ctx);
    else if (subcommand == "verify-lemma") r = verify_lemma(ctx);
    else r = scaling_u0(ctx);
    r.out_dir = dir.string();
    return r;
}

}  // namespace sscl::cli
