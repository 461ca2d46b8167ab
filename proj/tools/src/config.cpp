#include "config.hpp"

#include <fstream>
#include <functional>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "sscl/csv.hpp"

namespace sscl::cli {

namespace {

struct Key {
    const char* section;
    const char* name;
    std::function<std::string(const ExperimentConfig&)> get;
    std::function<void(ExperimentConfig&, const std::string&)> set;
};

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + csv::format(v[k]);
    return s;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k];
    return s;
}

std::vector<std::string> items(const std::string& value) {
    std::vector<std::string> out;
    for (const auto& part : csv::split(value)) {
        const auto t = csv::trim(part);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

std::vector<double> numbers(const std::string& value) {
    std::vector<double> out;
    for (const auto& s : items(value)) out.push_back(csv::parse_double(s));
    return out;
}

std::uint64_t unsigned_value(const std::string& value) {
    const auto t = csv::trim(value);
    std::size_t used = 0;
    const unsigned long long v = std::stoull(t, &used);
    if (used != t.size() || t.front() == '-') throw std::invalid_argument("expected a nonnegative integer");
    return v;
}

bool bool_value(const std::string& value) {
    const auto t = csv::trim(value);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw std::invalid_argument("expected true or false");
}

#define SSCL_NUM(sec, field)                                                                \
    Key {                                                                                   \
        sec, #field, [](const ExperimentConfig& c) { return csv::format(c.field); },        \
            [](ExperimentConfig& c, const std::string& v) { c.field = csv::parse_double(v); } \
    }
#define SSCL_UINT(sec, field)                                                                       \
    Key {                                                                                           \
        sec, #field, [](const ExperimentConfig& c) { return std::to_string(c.field); },             \
            [](ExperimentConfig& c, const std::string& v) {                                         \
                c.field = static_cast<decltype(c.field)>(unsigned_value(v));                        \
            }                                                                                       \
    }
#define SSCL_STR(sec, field)                                                               \
    Key {                                                                                  \
        sec, #field, [](const ExperimentConfig& c) { return c.field; },                    \
            [](ExperimentConfig& c, const std::string& v) { c.field = csv::trim(v); }      \
    }
#define SSCL_LIST(sec, field)                                                            \
    Key {                                                                                \
        sec, #field, [](const ExperimentConfig& c) { return join(c.field); },            \
            [](ExperimentConfig& c, const std::string& v) { c.field = numbers(v); }      \
    }

const std::vector<Key>& keys() {
    static const std::vector<Key> k{
        SSCL_UINT("experiment", seed),
        SSCL_UINT("experiment", threads),
        SSCL_UINT("grid", dimension),
        SSCL_UINT("grid", cells),
        Key{"flux", "family", [](const ExperimentConfig& c) { return c.flux; },
            [](ExperimentConfig& c, const std::string& v) { c.flux = csv::trim(v); }},
        Key{"flux", "params", [](const ExperimentConfig& c) { return join(c.flux_params); },
            [](ExperimentConfig& c, const std::string& v) { c.flux_params = numbers(v); }},
        SSCL_NUM("flux", theta),
        Key{"initial", "name", [](const ExperimentConfig& c) { return c.initial; },
            [](ExperimentConfig& c, const std::string& v) { c.initial = csv::trim(v); }},
        Key{"initial", "params", [](const ExperimentConfig& c) { return join(c.initial_params); },
            [](ExperimentConfig& c, const std::string& v) { c.initial_params = numbers(v); }},
        SSCL_NUM("path", horizon),
        SSCL_UINT("path", segments),
        SSCL_UINT("path", refine),
        Key{"path", "deterministic", [](const ExperimentConfig& c) { return std::string(c.deterministic ? "true" : "false"); },
            [](ExperimentConfig& c, const std::string& v) { c.deterministic = bool_value(v); }},
        SSCL_STR("scheme", numerical_flux),
        SSCL_NUM("scheme", cfl),
        SSCL_STR("record", times),
        SSCL_NUM("record", time_ratio),
        SSCL_UINT("record", time_count),
        SSCL_LIST("record", time_list),
        SSCL_UINT("record", xi_bins),
        SSCL_LIST("record", lambdas),
        SSCL_NUM("regularizer", gamma),
        SSCL_NUM("regularizer", alpha),
        SSCL_UINT("ensemble", replicas),
        SSCL_NUM("ensemble", window_min),
        SSCL_NUM("ensemble", window_max),
        SSCL_LIST("ensemble", levels),
        SSCL_NUM("ensemble", slope_tolerance),
        SSCL_NUM("ensemble", ratio_bound),
        Key{"source", "coeff", [](const ExperimentConfig& c) { return csv::format(c.source); },
            [](ExperimentConfig& c, const std::string& v) { c.source = csv::parse_double(v); }},
        SSCL_STR("nonlinearity", condition),
        SSCL_NUM("nonlinearity", xi_min),
        SSCL_NUM("nonlinearity", xi_max),
        SSCL_NUM("nonlinearity", eps_max),
        SSCL_NUM("nonlinearity", eps_min),
        SSCL_UINT("nonlinearity", eps_count),
        SSCL_UINT("nonlinearity", direction_samples),
        SSCL_UINT("nonlinearity", shift_samples),
        SSCL_UINT("nonlinearity", xi_samples),
        Key{"split", "modes", [](const ExperimentConfig& c) { return join(c.modes); },
            [](ExperimentConfig& c, const std::string& v) { c.modes = items(v); }},
        SSCL_NUM("split", split_tolerance),
        Key{"lemma", "instances", [](const ExperimentConfig& c) { return std::to_string(c.lemma_instances); },
            [](ExperimentConfig& c, const std::string& v) { c.lemma_instances = unsigned_value(v); }},
        SSCL_LIST("scaling", gammas),
        SSCL_UINT("scaling", mc_paths),
        SSCL_UINT("scaling", scaling_segments),
    };
    return k;
}

#undef SSCL_NUM
#undef SSCL_UINT
#undef SSCL_STR
#undef SSCL_LIST

}  // namespace

ExperimentConfig parse_config(std::istream& is) {
    ExperimentConfig cfg;
    std::string section;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto t = csv::trim(line);
        if (t.empty()) continue;
        const auto where = " (line " + std::to_string(lineno) + ")";
        if (t.front() == '[') {
            if (t.back() != ']') throw std::invalid_argument("malformed section header" + where);
            section = csv::trim(t.substr(1, t.size() - 2));
            bool known = false;
            for (const auto& k : keys()) known = known || section == k.section;
            if (!known) throw std::invalid_argument("unknown section [" + section + "]" + where);
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected key = value" + where);
        if (section.empty()) throw std::invalid_argument("key outside any section" + where);
        const auto name = csv::trim(t.substr(0, eq));
        const auto value = csv::trim(t.substr(eq + 1));
        bool found = false;
        for (const auto& k : keys()) {
            if (section != k.section || name != k.name) continue;
            try {
                k.set(cfg, value);
            } catch (const std::exception& e) {
                throw std::invalid_argument("bad value for " + section + "." + name + where + ": " + e.what());
            }
            found = true;
        }
        if (!found) throw std::invalid_argument("unknown key " + section + "." + name + where);
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path);
    return parse_config(in);
}

std::string serialize(const ExperimentConfig& cfg, bool with_threads) {
    std::ostringstream os;
    std::string section;
    for (const auto& k : keys()) {
        if (!with_threads && std::string(k.name) == "threads") continue;
        if (section != k.section) {
            if (!section.empty()) os << '\n';
            section = k.section;
            os << '[' << section << "]\n";
        }
        os << k.name << " = " << k.get(cfg) << '\n';
    }
    return os.str();
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize(cfg, false)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace sscl::cli
