#pragma once

#include <vector>

#include "weaksde/run_config.hpp"
#include "weaksde/stats.hpp"

namespace weaksde {

/// One group of checks per headline property. Each function is a pure,
/// deterministic computation (no files, no clocks), so the suite output is
/// byte-stable across runs.
namespace battery {
std::vector<TestReport> exact_radius(const RunConfig&);
std::vector<TestReport> angle_uniformity(const RunConfig&);
std::vector<TestReport> angle_independence(const RunConfig&);
std::vector<TestReport> shared_noise_offsets(const RunConfig&);
std::vector<TestReport> reconstruction_refinement(const RunConfig&);
std::vector<TestReport> lambda_mean_identity(const RunConfig&);
std::vector<TestReport> origin_return_dichotomy(const RunConfig&);
std::vector<TestReport> hitting_angle(const RunConfig&);
std::vector<TestReport> scaling_law(const RunConfig&);
std::vector<TestReport> tsirelson_properties(const RunConfig&);
std::vector<TestReport> tanaka_properties(const RunConfig&);
std::vector<TestReport> control_identities(const RunConfig&);
}  // namespace battery

/// Every battery group in order.
std::vector<TestReport> run_acceptance_battery(const RunConfig& config);

/// Runs the battery and writes summary.csv plus the per-experiment data
/// files (and figure SVGs when the format asks for them) under
/// config.out_dir. Nothing is written outside that directory.
struct SuiteOutcome {
    std::vector<TestReport> reports;
    bool all_pass = false;
};
SuiteOutcome run_suite(const RunConfig& config);

}  // namespace weaksde
