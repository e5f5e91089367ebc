#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "weaksde/rng.hpp"

namespace weaksde {

/// Full parameter set of the verification suite. Plain key = value text
/// with [section] headers; unknown sections or keys are rejected, and all
/// numeric parameters are validated before any simulation starts. The only
/// environment override is SUITE_SEED (master seed).
struct RunConfig {
    enum class Format { csv, csv_svg };

    Seed seed{20240801u, 0};
    std::filesystem::path out_dir = "suite-out";
    Format format = Format::csv_svg;

    struct Tangential {
        double t0 = 1e-4;
        double t1 = 4.0;
        int steps = 1000;
        int paths = 1000;
    } tangential;

    struct Angle {
        int n = 10000;
        std::vector<double> s_values = {-1.0, 0.0, 1.0};
        double significance = 0.01;
    } angle;

    struct Reconstruction {
        double t0 = 0.25;
        double t1 = 4.0;
        int coarse_steps = 256;
        int replicas = 1000;
    } reconstruction;

    struct LambdaMean {
        std::vector<double> lambdas = {0.25, 0.5, 0.9};
        std::vector<double> times = {0.5, 1.0};
        int replicas = 100000;
        int steps = 64;
    } lambda_mean;

    struct OriginReturn {
        std::vector<double> lambdas = {0.5, 0.9};
        double epsilon = 1e-3;
        double horizon = 10.0;
        double r0 = 1.0;
        int n = 10000;
        int steps = 4000;
    } origin_return;

    struct Hitting {
        double lambda = 0.5;
        double rho = 1.0;
        int n = 10000;
    } hitting;

    struct Scaling {
        double lambda = 0.5;
        double rho0 = 0.5;
        double rho1 = 1.0;
        double alpha = 0.25;
        int n = 10000;
    } scaling;

    struct Tsirelson {
        int depth = 6;
        int substeps = 8;
        int n = 10000;
    } tsirelson;

    struct Tanaka {
        int steps = 1000;
        int n = 10000;
    } tanaka;

    struct Control {
        double eta = 0.5;
        double big_r = 1.0;
        int n = 10000;
        std::vector<double> lambdas = {0.5, 0.25, 0.1};
    } control;

    /// Module-precondition validation; returns human-readable problems
    /// naming section.key.
    std::vector<std::string> validate() const;
};

/// Parses the config text. On failure returns std::nullopt and fills
/// `error` with a message naming the offending field.
std::optional<RunConfig> parse_run_config(std::istream& is, std::string& error);

/// SUITE_SEED, when set, replaces the master seed.
void apply_env_overrides(RunConfig& config);

}  // namespace weaksde
