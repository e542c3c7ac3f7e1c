#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "spingw/spin_cft.hpp"
#include "spingw/three_spin_p1.hpp"

namespace spingw::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_verify_failed = 1,
    exit_usage = 2,
    exit_cache = 3,
};

struct RunConfig {
    std::string subcommand;
    std::string action;  ///< graphs / cache sub-action
    int beta_max = 3;
    int n1_max = 6;
    int t_max = 16;
    std::string format = "json";
    std::string cache;
    Reading reading = Reading::pde;
    Target target = Target::p1;
    int r = 3;
};

/// Reads "key = value" lines into cfg. Blank lines and lines starting with '#'
/// are skipped. Throws DomainError on unknown keys or bad values.
void apply_config_file(const std::string &path, RunConfig &cfg);

/// Parses argv and dispatches. Returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace spingw::cli
