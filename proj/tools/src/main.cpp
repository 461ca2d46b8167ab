#include <exception>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "experiments.hpp"
#include "sscl/error.hpp"

int main(int argc, char** argv) {
    using namespace sscl::cli;
    CLI::App app{"Stochastic scalar conservation law experiments"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string out_root = default_out_root();
    std::size_t threads = 0;
    bool threads_set = false;

    const std::map<std::string, std::string> about{
        {"simulate", "one pathwise solve with norm traces and the kinetic ledger"},
        {"decay", "ensemble decay of E|u(t) - mean|_1 and its fitted rate"},
        {"decay-det", "deterministic decay and its fitted rate"},
        {"regularity", "fractional Sobolev norms under grid refinement"},
        {"quasi", "regularity study for solutions with a zero-order source"},
        {"nonlinearity", "estimate the nonlinearity exponent of a flux"},
        {"verify-split", "check the regularized split identity mode by mode"},
        {"verify-lemma", "check the Gaussian integral lemma on closed-form and random instances"},
        {"scaling-u0", "energy of the free-transport part against the regularizer strength"}};

    for (const auto& name : subcommands()) {
        auto* sub = app.add_subcommand(name, about.at(name));
        sub->add_option("config", config_path, "experiment configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_root, "output root directory");
        sub->add_option_function<std::size_t>(
            "--threads", [&](const std::size_t& n) { threads = n, threads_set = true; }, "worker threads (0 = all cores)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }
    const std::string sub = app.get_subcommands().front()->get_name();

    try {
        ExperimentConfig cfg = load_config(config_path);
        if (threads_set) cfg.threads = threads;
        std::cout << serialize(cfg) << std::flush;
        const RunResult r = run(sub, cfg, out_root, std::cerr);
        std::cout << "output: " << r.out_dir << '\n' << r.summary << std::endl;
        return r.exit_code;
    } catch (const sscl::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << " (seed " << e.seed() << ", t = " << e.time() << ")\n";
        return kNumericalFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
