#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "spingw/three_spin_p1.hpp"

namespace spingw {

struct InvariantResult {
    std::string name;
    bool pass = true;
    long checked = 0;
    std::string detail;
    std::string counterexample;  ///< first failing item, empty on success
};

struct SuiteResult {
    std::string name;
    std::vector<InvariantResult> invariants;
    bool pass() const;
};

struct VerifyOptions {
    int beta_max = 3;
    int n1_max = 6;
    int t_max = 16;
    Reading reading = Reading::pde;
    Exec exec = Exec::parallel;
};

/// Suite names in run order.
const std::vector<std::string> &verification_suites();

/// Runs one named suite; throws DomainError for an unknown name.
SuiteResult run_suite(const std::string &name, const VerifyOptions &options);

nlohmann::ordered_json report_to_json(const std::vector<SuiteResult> &suites);

} // namespace spingw
