#pragma once

#include "dwv/check.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dwv {

/// One reported check. elapsed_ms is the wall time of the check group that produced it;
/// checks in one group share intermediate objects and are timed together.
struct CheckResult {
    std::string check_id;
    std::string paper_ref;
    CheckStatus status = CheckStatus::Pass;
    std::size_t residual_term_count = 0;
    std::int64_t elapsed_ms = 0;
    std::string detail;
};

struct SuiteConfig {
    std::string model = "vierbein";
    std::vector<std::string> suites;
    std::uint64_t seed = 42;
    int trials = 5;
};

struct Summary {
    std::size_t pass = 0, fail = 0, reported = 0;
};

/// Suite names in execution order.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
/// "dreibein" -> 3, "vierbein" -> 4; 0 for anything else.
int model_dimension(const std::string& model);

/// Runs the selected suites in canonical order (duplicates ignored). Throws
/// std::invalid_argument on an unknown model or suite, an empty suite list, or trials < 1.
std::vector<CheckResult> run(const SuiteConfig& config);

Summary summarize(const std::vector<CheckResult>& results);

/// Single JSON object; elapsed_ms is written as 0 when stable is set.
std::string report_json(const SuiteConfig& config, const std::vector<CheckResult>& results, bool stable);
/// One aligned line per check followed by a summary line.
std::string report_text(const SuiteConfig& config, const std::vector<CheckResult>& results, bool stable);

}  // namespace dwv
