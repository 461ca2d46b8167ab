#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace sscl::cli {

enum ExitCode : int { kPass = 0, kCheckFail = 1, kUsage = 2, kNumericalFailure = 3 };

struct RunResult {
    int exit_code = kPass;
    std::string out_dir;
    std::string summary;  // one line, starting with PASS or FAIL when checks apply
};

const std::vector<std::string>& subcommands();

/// Runs one study, writing CSVs into `<out_root>/<subcommand>-<hash>`.
/// Invalid configurations raise std::invalid_argument; numerical blow-up raises
/// sscl::NumericalFailure.
RunResult run(const std::string& subcommand, const ExperimentConfig& cfg, const std::string& out_root,
              std::ostream& log);

/// Output root: $SSCL_OUT when set, otherwise ./sscl_out.
std::string default_out_root();

}  // namespace sscl::cli
