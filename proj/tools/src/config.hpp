#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sscl::cli {

/// Flat experiment description. Every key lives in one `[section]`; see
/// `ExperimentConfig::keys()` for the full list with defaults.
struct ExperimentConfig {
    // [experiment]
    std::uint64_t seed = 1;
    std::size_t threads = 0;  // 0 = hardware threads; never affects results

    // [grid]
    std::size_t dimension = 1;
    std::size_t cells = 256;

    // [flux]
    std::string flux = "burgers";
    std::vector<double> flux_params;
    double theta = 0.0;  // 0 = use the family's exponent

    // [initial]
    std::string initial = "sine";
    std::vector<double> initial_params;

    // [path]
    double horizon = 1.0;
    std::size_t segments = 64;
    std::size_t refine = 0;
    bool deterministic = false;

    // [scheme]
    std::string numerical_flux = "godunov";
    double cfl = 0.45;

    // [record]
    std::string times = "geometric";  // geometric | uniform | list
    double time_ratio = 1.25;
    std::size_t time_count = 16;
    std::vector<double> time_list;
    std::size_t xi_bins = 128;
    std::vector<double> lambdas;

    // [regularizer]
    double gamma = 1.0;
    double alpha = 0.5;

    // [ensemble]
    std::size_t replicas = 16;
    double window_min = 1.0;
    double window_max = 0.0;  // 0 = horizon
    std::vector<double> levels;
    double slope_tolerance = 0.05;
    double ratio_bound = 1.2;

    // [source]
    double source = 0.0;

    // [nonlinearity]
    std::string condition = "stochastic";
    double xi_min = -2.0;
    double xi_max = 2.0;
    double eps_max = 0.3;
    double eps_min = 0.003;
    std::size_t eps_count = 7;
    std::size_t direction_samples = 32;
    std::size_t shift_samples = 32;
    std::size_t xi_samples = 40000;

    // [split]
    std::vector<std::string> modes{"1"};
    double split_tolerance = 0.01;

    // [lemma]
    std::size_t lemma_instances = 100;

    // [scaling]
    std::vector<double> gammas{1.0, 2.0, 4.0, 8.0};
    std::size_t mc_paths = 32;
    std::size_t scaling_segments = 1024;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Parses `[section]` headers and `key = value` lines; `#` starts a comment.
/// Unknown sections or keys and malformed values raise std::invalid_argument.
ExperimentConfig parse_config(std::istream& is);
ExperimentConfig load_config(const std::string& path);

/// Canonical text form: every key in a fixed order with round-trip number formatting.
/// `with_threads = false` drops the thread count, which never changes results.
std::string serialize(const ExperimentConfig& cfg, bool with_threads = true);

/// FNV-1a over the canonical form without the thread count.
std::uint64_t config_hash(const ExperimentConfig& cfg);

}  // namespace sscl::cli
