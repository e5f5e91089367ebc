// Acceptance driver: runs every verification criterion at its pinned
// tolerance, prints one pass/fail line per criterion, and exits nonzero if
// any criterion fails. The last criterion reruns the whole suite twice and
// byte-compares the outputs.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "weaksde/run_config.hpp"
#include "weaksde/stats.hpp"
#include "weaksde/suite.hpp"

namespace fs = std::filesystem;
using namespace weaksde;

namespace {

struct CriterionResult {
    std::string name;
    std::vector<TestReport> reports;
    double seconds = 0.0;
    double budget = 0.0;  // 0 = untimed
    bool pass = false;
};

CriterionResult run_criterion(const std::string& name, double budget,
                              const std::function<std::vector<TestReport>()>& fn) {
    CriterionResult result;
    result.name = name;
    result.budget = budget;
    const auto t0 = std::chrono::steady_clock::now();
    result.reports = fn();
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.pass = true;
    for (const TestReport& r : result.reports) result.pass = result.pass && r.pass;
    if (budget > 0.0 && result.seconds > budget) result.pass = false;
    return result;
}

void print_criterion(int index, const CriterionResult& result) {
    std::printf("[%2d] %s  %s", index, result.pass ? "PASS" : "FAIL", result.name.c_str());
    if (result.budget > 0.0)
        std::printf("  (%.2f s, budget %.0f s)", result.seconds, result.budget);
    else
        std::printf("  (%.2f s)", result.seconds);
    std::printf("\n");
    for (const TestReport& r : result.reports) {
        std::printf("      %s %-45s statistic=%-12.6g threshold=%-12.6g n=%lld\n",
                    r.pass ? "ok  " : "FAIL", r.name.c_str(), r.statistic, r.threshold, r.n);
    }
}

std::map<std::string, std::string> read_tree(const fs::path& root) {
    std::map<std::string, std::string> contents;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        std::ifstream is(entry.path(), std::ios::binary);
        std::string data((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
        contents[fs::relative(entry.path(), root).string()] = std::move(data);
    }
    return contents;
}

std::vector<TestReport> determinism_criterion(const RunConfig& base, const fs::path& out_root) {
    RunConfig first = base;
    RunConfig second = base;
    first.out_dir = out_root / "determinism-a";
    second.out_dir = out_root / "determinism-b";
    fs::remove_all(first.out_dir);
    fs::remove_all(second.out_dir);
    const SuiteOutcome outcome_a = run_suite(first);
    const SuiteOutcome outcome_b = run_suite(second);
    (void)outcome_a;
    (void)outcome_b;

    const auto tree_a = read_tree(first.out_dir);
    const auto tree_b = read_tree(second.out_dir);

    TestReport report;
    report.name = "suite.byte-identical-rerun";
    report.n = static_cast<long long>(tree_a.size());
    std::size_t mismatched = tree_a.size() == tree_b.size() ? 0 : 1;
    for (const auto& [file, data] : tree_a) {
        const auto it = tree_b.find(file);
        if (it == tree_b.end() || it->second != data) ++mismatched;
    }
    report.statistic = static_cast<double>(mismatched);
    report.threshold = 0.0;
    report.pass = mismatched == 0;
    report.details.emplace_back("files_compared", std::to_string(tree_a.size()));
    return {report};
}

}  // namespace

int main(int argc, char** argv) {
    fs::path out_root = "acceptance-out";
    fs::path config_path;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--out" && i + 1 < argc) {
            out_root = argv[++i];
        } else if (arg == "--config" && i + 1 < argc) {
            config_path = argv[++i];
        } else {
            std::cerr << "usage: weaksde_acceptance [--out DIR] [--config FILE]\n";
            return 2;
        }
    }

    RunConfig config;
    if (!config_path.empty()) {
        std::ifstream is(config_path);
        if (!is) {
            std::cerr << "error: cannot open config " << config_path << '\n';
            return 2;
        }
        std::string error;
        const auto parsed = parse_run_config(is, error);
        if (!parsed) {
            std::cerr << "error: " << error << '\n';
            return 2;
        }
        config = *parsed;
    }
    apply_env_overrides(config);
    fs::create_directories(out_root);

    std::vector<CriterionResult> results;
    results.push_back(run_criterion("exact radius of tangential paths", 1.0,
                                    [&] { return battery::exact_radius(config); }));
    results.push_back(run_criterion("time-changed angle uniformity", 5.0,
                                    [&] { return battery::angle_uniformity(config); }));
    results.push_back(run_criterion("angle independent of innovations", 0.0,
                                    [&] { return battery::angle_independence(config); }));
    results.push_back(run_criterion("shared-noise offset constancy", 0.0,
                                    [&] { return battery::shared_noise_offsets(config); }));
    results.push_back(run_criterion("angle reconstruction refinement", 0.0,
                                    [&] { return battery::reconstruction_refinement(config); }));
    results.push_back(run_criterion("squared-radius mean identity", 0.0,
                                    [&] { return battery::lambda_mean_identity(config); }));
    results.push_back(run_criterion("origin-return dichotomy", 60.0,
                                    [&] { return battery::origin_return_dichotomy(config); }));
    results.push_back(run_criterion("hitting-angle uniformity and decay", 0.0,
                                    [&] { return battery::hitting_angle(config); }));
    results.push_back(run_criterion("shell-increment scaling law", 0.0,
                                    [&] { return battery::scaling_law(config); }));
    results.push_back(run_criterion("drift-recursion properties", 0.0,
                                    [&] { return battery::tsirelson_properties(config); }));
    results.push_back(run_criterion("sign-driver symmetry", 0.0,
                                    [&] { return battery::tanaka_properties(config); }));
    results.push_back(run_criterion("control cost identities", 120.0,
                                    [&] { return battery::control_identities(config); }));
    results.push_back(run_criterion("suite determinism", 0.0,
                                    [&] { return determinism_criterion(config, out_root); }));

    int passed = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        print_criterion(static_cast<int>(i) + 1, results[i]);
        if (results[i].pass) ++passed;
    }
    std::printf("ACCEPTANCE: %d/%zu criteria passed\n", passed, results.size());
    return passed == static_cast<int>(results.size()) ? 0 : 1;
}
