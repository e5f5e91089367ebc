#include "weaksde/suite.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "weaksde/control.hpp"
#include "weaksde/lambda.hpp"
#include "weaksde/path.hpp"
#include "weaksde/svg.hpp"
#include "weaksde/tanaka.hpp"
#include "weaksde/tangential.hpp"
#include "weaksde/tsirelson.hpp"

namespace weaksde {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfSqrt2 = std::numbers::sqrt2 / 2.0;

// Seed-stream blocks keep every battery group on disjoint replica streams.
constexpr std::uint64_t kBlock = 1u << 20;

Seed block_seed(const RunConfig& config, std::uint64_t block) {
    return config.seed.with_stream(config.seed.stream + block * kBlock);
}

double ulps_apart(double value, double reference) {
    const double scale = std::max(std::abs(value), std::abs(reference));
    if (scale == 0.0) return 0.0;
    const double ulp = std::nextafter(scale, std::numeric_limits<double>::infinity()) - scale;
    return std::abs(value - reference) / ulp;
}

std::string tagged(std::string base, const std::string& tag) {
    return base + "." + tag;
}

std::string num_tag(const char* prefix, double v) {
    std::ostringstream os;
    os << prefix << v;
    return os.str();
}

}  // namespace

namespace battery {

std::vector<TestReport> exact_radius(const RunConfig& config) {
    const auto& p = config.tangential;
    const TimeGrid grid = TimeGrid::logspaced(p.t0, p.t1, p.steps + 1);
    const Seed seed = block_seed(config, 1);
    double worst_ulps = 0.0;
    for (int rep = 0; rep < p.paths; ++rep) {
        const PolarPath path =
            simulate_tangential(seed.with_stream(seed.stream + static_cast<std::uint64_t>(rep)),
                                grid);
        for (std::size_t i = 0; i < path.size(); ++i) {
            const auto planar = path.planar(i);
            const double radius = std::hypot(planar[0], planar[1]);
            worst_ulps = std::max(worst_ulps, ulps_apart(radius, std::sqrt(grid[i])));
        }
    }
    TestReport report;
    report.name = "tangential.exact-radius";
    report.n = p.paths;
    report.statistic = worst_ulps;
    report.threshold = 4.0;
    report.pass = report.statistic <= report.threshold;
    report.details.emplace_back("paths", std::to_string(p.paths));
    report.details.emplace_back("grid_points", std::to_string(grid.size()));
    return {report};
}

std::vector<TestReport> angle_uniformity(const RunConfig& config) {
    std::vector<TestReport> reports;
    const Seed seed = block_seed(config, 2);
    std::uint64_t offset = 0;
    for (double s : config.angle.s_values) {
        const AngleMarginal sample =
            angle_marginal_sample(seed.with_stream(seed.stream + offset), s, config.angle.n);
        TestReport report = kuiper_test(TorusSample::wrap(sample.marginal),
                                        config.angle.significance,
                                        tagged("tangential.angle-uniformity", num_tag("s=", s)));
        reports.push_back(std::move(report));
        offset += static_cast<std::uint64_t>(config.angle.n) + 1;
    }
    return reports;
}

std::vector<TestReport> angle_independence(const RunConfig& config) {
    // theta_{e^s} at s = 0 against increments over three disjoint windows
    // in log time: one before s, two after.
    const std::pair<double, double> windows[3] = {{-2.0, -1.25}, {0.5, 1.0}, {1.5, 2.5}};
    const Seed seed = block_seed(config, 3);
    const AngleMarginal sample = angle_marginal_sample(seed, 0.0, config.angle.n, windows);
    const TorusSample marginal = TorusSample::wrap(sample.marginal);
    std::vector<TestReport> reports;
    for (std::size_t w = 0; w < 3; ++w) {
        std::ostringstream tag;
        tag << "window=(" << windows[w].first << ',' << windows[w].second << ')';
        reports.push_back(ecf_independence(marginal, TorusSample::wrap(sample.increments[w]), 1, 1,
                                           tagged("tangential.angle-independence", tag.str())));
    }
    return reports;
}

std::vector<TestReport> shared_noise_offsets(const RunConfig& config) {
    const auto& p = config.tangential;
    const TimeGrid grid = TimeGrid::logspaced(p.t0, p.t1, p.steps + 1);
    const Seed seed = block_seed(config, 4);
    std::vector<TestReport> reports;
    const double offsets[2] = {kPi / 2.0, kPi};
    const char* tags[2] = {"offset=pi/2", "offset=pi"};
    for (int j = 0; j < 2; ++j) {
        const auto [first, second] =
            shared_noise_pair(seed.with_stream(seed.stream + static_cast<std::uint64_t>(j)), grid,
                              offsets[j]);
        double worst_ulps = 0.0;
        for (std::size_t i = 0; i < first.size(); ++i) {
            const double difference = second.lifted[i] - first.lifted[i];
            const double scale =
                std::max({std::abs(first.lifted[i]), std::abs(second.lifted[i]), offsets[j]});
            const double ulp =
                std::nextafter(scale, std::numeric_limits<double>::infinity()) - scale;
            worst_ulps = std::max(worst_ulps, std::abs(difference - offsets[j]) / ulp);
        }
        TestReport report;
        report.name = tagged("tangential.shared-noise-offset", tags[j]);
        report.n = static_cast<long long>(first.size());
        report.statistic = worst_ulps;
        report.threshold = 4.0;
        report.pass = report.statistic <= report.threshold;
        reports.push_back(std::move(report));
    }
    return reports;
}

std::vector<TestReport> reconstruction_refinement(const RunConfig& config) {
    const auto& p = config.reconstruction;
    const Seed seed = block_seed(config, 5);

    auto rms_error = [&](int steps, std::uint64_t stream_offset) {
        const TimeGrid grid = TimeGrid::logspaced(p.t0, p.t1, steps + 1);
        double sum_sq = 0.0;
        for (int rep = 0; rep < p.replicas; ++rep) {
            const PolarPath path = simulate_tangential(
                seed.with_stream(seed.stream + stream_offset + static_cast<std::uint64_t>(rep)),
                grid);
            const double rebuilt =
                reconstruct_angle(path.lifted[0], path, 0, path.size() - 1);
            // Compare on the lift: wrap the gap to the nearest representative.
            double gap = wrap_angle(path.lifted.back()) - rebuilt;
            if (gap > kPi) gap -= 2.0 * kPi;
            if (gap < -kPi) gap += 2.0 * kPi;
            sum_sq += gap * gap;
        }
        return std::sqrt(sum_sq / p.replicas);
    };

    const double rms_coarse = rms_error(p.coarse_steps, 0);
    const double rms_fine = rms_error(4 * p.coarse_steps,
                                      static_cast<std::uint64_t>(p.replicas) + 1);

    TestReport report;
    report.name = "tangential.reconstruction-refinement";
    report.n = p.replicas;
    report.statistic = rms_fine / rms_coarse;
    report.threshold = 0.9;
    report.pass = report.statistic <= report.threshold;
    report.details.emplace_back("rms_coarse", format_double(rms_coarse));
    report.details.emplace_back("rms_fine", format_double(rms_fine));
    report.details.emplace_back("coarse_steps", std::to_string(p.coarse_steps));
    return {report};
}

std::vector<TestReport> lambda_mean_identity(const RunConfig& config) {
    const auto& p = config.lambda_mean;
    const Seed seed = block_seed(config, 6);
    const double t_max = *std::max_element(p.times.begin(), p.times.end());
    const TimeGrid grid = TimeGrid::uniform(0.0, t_max, p.steps + 1);

    // Map each requested time to the nearest grid index.
    std::vector<std::size_t> indices;
    for (double t : p.times) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (std::abs(grid[i] - t) < std::abs(grid[best] - t)) best = i;
        indices.push_back(best);
    }

    std::vector<TestReport> reports;
    std::uint64_t offset = 0;
    for (double lambda : p.lambdas) {
        const LambdaParams params = LambdaParams::from_lambda(lambda);
        std::vector<double> sum(indices.size(), 0.0), sum_sq(indices.size(), 0.0);
        for (int rep = 0; rep < p.replicas; ++rep) {
            Rng rng(seed.with_stream(seed.stream + offset + static_cast<std::uint64_t>(rep)));
            const LambdaPath path = simulate_lambda(rng, params, grid);
            for (std::size_t j = 0; j < indices.size(); ++j) {
                const double z = path.radius.z[indices[j]];
                sum[j] += z;
                sum_sq[j] += z * z;
            }
        }
        for (std::size_t j = 0; j < indices.size(); ++j) {
            const double t = grid[indices[j]];
            const double mean = sum[j] / p.replicas;
            const double var =
                (sum_sq[j] - sum[j] * sum[j] / p.replicas) / (p.replicas - 1);
            const double std_error = std::sqrt(var / p.replicas);
            TestReport report;
            report.name = tagged(tagged("lambda.mean-identity", num_tag("l=", lambda)),
                                 num_tag("t=", t));
            report.n = p.replicas;
            report.statistic = std::abs(mean - t) / std_error;
            report.threshold = 3.0;
            report.pass = report.statistic <= report.threshold;
            report.details.emplace_back("mean", format_double(mean));
            report.details.emplace_back("std_error", format_double(std_error));
            reports.push_back(std::move(report));
        }
        offset += static_cast<std::uint64_t>(p.replicas) + 1;
    }
    return reports;
}

std::vector<TestReport> origin_return_dichotomy(const RunConfig& config) {
    const auto& p = config.origin_return;
    const Seed seed = block_seed(config, 7);
    std::vector<TestReport> reports;
    std::uint64_t offset = 0;
    for (double lambda : p.lambdas) {
        const LambdaParams params = LambdaParams::from_lambda(lambda);
        const OriginReturnEstimate estimate = return_to_origin_experiment(
            seed.with_stream(seed.stream + offset), params, p.epsilon, p.horizon, p.n, p.r0,
            p.steps);
        TestReport report;
        report.name = tagged("lambda.origin-return", num_tag("l=", lambda));
        report.n = p.n;
        if (params.origin_polar()) {
            // The origin is polar: near-origin visits must be rare.
            report.statistic = estimate.probability;
            report.threshold = 0.05;
        } else {
            // Returns are certain in the limit: visits must dominate.
            report.statistic = 1.0 - estimate.probability;
            report.threshold = 0.05;
        }
        report.pass = report.statistic <= report.threshold;
        report.details.emplace_back("probability", format_double(estimate.probability));
        report.details.emplace_back("std_error", format_double(estimate.std_error));
        report.details.emplace_back("epsilon", format_double(p.epsilon));
        report.details.emplace_back("horizon", format_double(p.horizon));
        reports.push_back(std::move(report));
        offset += static_cast<std::uint64_t>(p.n) + 1;
    }
    return reports;
}

std::vector<TestReport> hitting_angle(const RunConfig& config) {
    const auto& p = config.hitting;
    const AngleHittingReports result = angle_at_hitting_tests(
        block_seed(config, 8), LambdaParams::from_lambda(p.lambda), p.rho, p.n);
    std::vector<TestReport> reports{result.uniformity, result.independence,
                                    result.shell_contraction, result.power_decay};
    for (TestReport& r : reports) r.name = "lambda." + r.name;
    return reports;
}

std::vector<TestReport> scaling_law(const RunConfig& config) {
    const auto& p = config.scaling;
    const LambdaParams params = LambdaParams::from_lambda(p.lambda);
    const Seed seed = block_seed(config, 9);

    TestReport agreement = scaling_check(seed, params, p.rho0, p.rho1, p.alpha, p.n);
    agreement.name = "lambda.scaling-agreement";

    // Negative control: mismatched shell ratios must be told apart.
    const Seed seed_neg = block_seed(config, 10);
    auto shell_increments = [&](double lo, double hi, std::uint64_t stream0) {
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(p.n));
        std::uint64_t stream = seed_neg.stream + stream0;
        while (out.size() < static_cast<std::size_t>(p.n)) {
            Rng rng(seed_neg.with_stream(stream++));
            const double radii[2] = {lo, hi};
            const ShellSample s = sample_radius_crossings(rng, params, radii);
            if (s.complete) out.push_back(s.theta[1] - s.theta[0]);
        }
        return out;
    };
    const std::vector<double> inc_a = shell_increments(p.rho0, p.rho1, 0);
    const std::vector<double> inc_b =
        shell_increments(p.rho0, 2.0 * p.rho1, static_cast<std::uint64_t>(p.n) * 2);
    const TorusSample sample_a = TorusSample::wrap(inc_a);
    const TorusSample sample_b = TorusSample::wrap(inc_b);
    double distance = 0.0;
    for (int k = 1; k <= 3; ++k)
        distance = std::max(distance, std::abs(torus_ecf(k, sample_a) - torus_ecf(k, sample_b)));

    TestReport negative;
    negative.name = "lambda.scaling-negative-control";
    negative.n = p.n;
    // Pass when the ECF distance clears the agreement threshold, i.e. the
    // statistic (threshold/distance) drops below 1.
    const double ecf_threshold = 3.0 / std::sqrt(static_cast<double>(p.n));
    negative.statistic = ecf_threshold / std::max(distance, 1e-300);
    negative.threshold = 1.0;
    negative.pass = negative.statistic <= negative.threshold;
    negative.details.emplace_back("ecf_distance", format_double(distance));
    negative.details.emplace_back("agreement_threshold", format_double(ecf_threshold));

    return {std::move(agreement), std::move(negative)};
}

std::vector<TestReport> tsirelson_properties(const RunConfig& config) {
    const auto& p = config.tsirelson;
    const Seed seed = block_seed(config, 11);
    TsirelsonConfig ts;
    ts.depth = p.depth;
    ts.substeps = p.substeps;

    std::vector<double> drift_levels(static_cast<std::size_t>(p.n));
    std::vector<double> driver_increments(static_cast<std::size_t>(p.n));
    double worst_replay = 0.0;
    for (int rep = 0; rep < p.n; ++rep) {
        const TsirelsonPath path =
            simulate_tsirelson(seed.with_stream(seed.stream + static_cast<std::uint64_t>(rep)), ts);
        drift_levels[static_cast<std::size_t>(rep)] = path.drift_at_boundary(0);
        const std::size_t intervals = path.b.size();
        const std::size_t last_boundary = (intervals - 1) * static_cast<std::size_t>(p.substeps);
        driver_increments[static_cast<std::size_t>(rep)] =
            path.w.back() - path.w[last_boundary];

        // Forward replay from the midpoint interval must be bitwise equal.
        if (rep < 32) {
            const std::size_t j0 = intervals / 2;
            const std::size_t base = j0 * static_cast<std::size_t>(p.substeps);
            const std::vector<double> replay =
                tsirelson_reconstruct(path, j0, path.b[j0], path.x[base]);
            for (std::size_t i = 0; i < replay.size(); ++i)
                worst_replay = std::max(worst_replay, std::abs(replay[i] - path.x[base + i]));
        }
    }

    // Drift levels live on [0,1); rescale to the torus for the tests.
    std::vector<double> scaled(drift_levels.size());
    for (std::size_t i = 0; i < drift_levels.size(); ++i)
        scaled[i] = drift_levels[i] * 2.0 * kPi;

    std::vector<TestReport> reports;
    reports.push_back(
        kuiper_test(TorusSample::wrap(scaled), 0.01, "tsirelson.drift-uniformity"));
    reports.push_back(ecf_independence(TorusSample::wrap(scaled),
                                       TorusSample::wrap(driver_increments), 1, 1,
                                       "tsirelson.drift-driver-independence"));

    TestReport replay;
    replay.name = "tsirelson.forward-reconstruction";
    replay.n = std::min(p.n, 32);
    replay.statistic = worst_replay;
    replay.threshold = 0.0;
    replay.pass = replay.statistic <= replay.threshold;
    reports.push_back(std::move(replay));
    return reports;
}

std::vector<TestReport> tanaka_properties(const RunConfig& config) {
    const auto& p = config.tanaka;
    const Seed seed = block_seed(config, 12);
    const TimeGrid grid = TimeGrid::uniform(0.0, 1.0, p.steps + 1);

    std::vector<double> signs(static_cast<std::size_t>(p.n));
    std::vector<double> endpoints(static_cast<std::size_t>(p.n));
    double worst_flip = 0.0;
    long long positive = 0;
    for (int rep = 0; rep < p.n; ++rep) {
        const TanakaPaths paths =
            simulate_tanaka(seed.with_stream(seed.stream + static_cast<std::uint64_t>(rep)), grid);
        const double sign_t = paths.x.back() >= 0.0 ? 1.0 : -1.0;
        signs[static_cast<std::size_t>(rep)] = sign_t;
        endpoints[static_cast<std::size_t>(rep)] = paths.w.back();
        positive += sign_t > 0.0 ? 1 : 0;

        if (rep < 64) {
            // Mirroring the solution must leave every driver increment
            // bit-identical except where the solution sits exactly at zero
            // (the starting point, where the sign convention decides).
            for (std::size_t i = 1; i + 1 < paths.x.size(); ++i) {
                if (paths.x[i] == 0.0) continue;
                const double dw = tanaka_driver_increment(paths.x[i], paths.x[i + 1]);
                const double dw_m = tanaka_driver_increment(-paths.x[i], -paths.x[i + 1]);
                worst_flip = std::max(worst_flip, std::abs(dw - dw_m));
            }
        }
    }

    std::vector<TestReport> reports;

    TestReport corr;
    corr.name = "tanaka.sign-driver-correlation";
    corr.n = p.n;
    corr.statistic = std::abs(sample_correlation(signs, endpoints));
    corr.threshold = 3.0 / std::sqrt(static_cast<double>(p.n));
    corr.pass = corr.statistic <= corr.threshold;
    reports.push_back(std::move(corr));

    TestReport flip;
    flip.name = "tanaka.flip-invariance";
    flip.n = std::min(p.n, 64);
    flip.statistic = worst_flip;
    flip.threshold = 0.0;
    flip.pass = flip.statistic <= flip.threshold;
    flip.details.emplace_back("note", "first step excluded: solution starts at zero");
    reports.push_back(std::move(flip));

    TestReport freq;
    freq.name = "tanaka.sign-frequency";
    freq.n = p.n;
    freq.statistic = std::abs(static_cast<double>(positive) / p.n - 0.5);
    freq.threshold = 1.5 / std::sqrt(static_cast<double>(p.n));
    freq.pass = freq.statistic <= freq.threshold;
    reports.push_back(std::move(freq));

    return reports;
}

std::vector<TestReport> control_identities(const RunConfig& config) {
    const auto& p = config.control;
    const Seed seed = block_seed(config, 13);
    std::vector<TestReport> reports;

    // Tangential strategy cost against the ring integral, three families.
    struct FamilyCase {
        const char* tag;
        RadialCost cost;
    };
    const FamilyCase cases[3] = {
        {"f=const:1", RadialCost::constant(1.0, p.big_r)},
        {"f=power:1", RadialCost::power(1.0, p.big_r)},
        {"f=power:-1", RadialCost::power(-1.0, p.big_r)},
    };
    for (const auto& c : cases) {
        const CostEstimate estimate =
            cost_estimate(Strategy::tangential(), c.cost, 0.0, p.eta, seed, p.n);
        const double closed = tangential_cost_closed_form(c.cost, p.eta);
        TestReport report;
        report.name = tagged("control.tangential-closed-form", c.tag);
        report.n = p.n;
        report.statistic = std::abs(estimate.mean - closed);
        report.threshold = 3.0 * estimate.std_error +
                           4.0 * (std::nextafter(std::abs(closed) + 1.0,
                                                 std::numeric_limits<double>::infinity()) -
                                  (std::abs(closed) + 1.0));
        report.pass = report.statistic <= report.threshold;
        report.details.emplace_back("mean", format_double(estimate.mean));
        report.details.emplace_back("closed_form", format_double(closed));
        reports.push_back(std::move(report));
    }

    // Unit cost is exactly eta^2.
    {
        const CostEstimate estimate = cost_estimate(
            Strategy::tangential(), RadialCost::constant(1.0, p.big_r), 0.0, p.eta, seed, p.n);
        TestReport report;
        report.name = "control.unit-cost-exact";
        report.n = p.n;
        report.statistic = ulps_apart(estimate.mean, p.eta * p.eta);
        report.threshold = 4.0;
        report.pass = report.statistic <= report.threshold;
        report.details.emplace_back("mean", format_double(estimate.mean));
        reports.push_back(std::move(report));
    }

    // Additivity of the tangential cost at the origin.
    {
        TestReport report = dpp_origin_check(RadialCost::power(-1.0, p.big_r), p.eta, p.big_r,
                                             seed.with_stream(seed.stream + kBlock / 4), p.n);
        report.name = "control." + report.name;
        report.n = p.n;
        reports.push_back(std::move(report));
    }

    // For a flat cost every unit-trace strategy pays E[tau] = R^2.
    {
        const RadialCost flat = RadialCost::constant(1.0, p.big_r);
        const double target = p.big_r * p.big_r;
        const Strategy strategies[2] = {Strategy::radial(), Strategy::lambda(0.5)};
        const char* tags[2] = {"strategy=radial", "strategy=lambda:0.5"};
        for (int j = 0; j < 2; ++j) {
            const CostEstimate estimate =
                cost_estimate(strategies[j], flat, 0.0, p.big_r,
                              seed.with_stream(seed.stream + kBlock / 2 +
                                               static_cast<std::uint64_t>(j) * kBlock / 8),
                              p.n);
            TestReport report;
            report.name = tagged("control.flat-cost-agreement", tags[j]);
            report.n = p.n;
            report.statistic = std::abs(estimate.mean - target) / estimate.std_error;
            report.threshold = 3.0;
            report.pass = report.statistic <= report.threshold;
            report.details.emplace_back("mean", format_double(estimate.mean));
            report.details.emplace_back("std_error", format_double(estimate.std_error));
            reports.push_back(std::move(report));
        }
    }

    // Radial motion cannot beat tangential motion for a decreasing cost.
    {
        const RadialCost inverse = RadialCost::power(-1.0, p.big_r);
        const CostEstimate radial =
            cost_estimate(Strategy::radial(), inverse, 0.0, 1.0,
                          seed.with_stream(seed.stream + 3 * kBlock / 4), p.n);
        const double tangential = tangential_cost_closed_form(inverse, 1.0);
        TestReport report;
        report.name = "control.radial-dominates-tangential";
        report.n = p.n;
        // Require radial mean above tangential by at least three standard
        // errors: statistic <= 0 passes.
        report.statistic = tangential + 3.0 * radial.std_error - radial.mean;
        report.threshold = 0.0;
        report.pass = report.statistic <= report.threshold;
        report.details.emplace_back("radial_mean", format_double(radial.mean));
        report.details.emplace_back("radial_std_error", format_double(radial.std_error));
        report.details.emplace_back("tangential", format_double(tangential));
        reports.push_back(std::move(report));
    }

    // Lambda costs approach the tangential closed form as lambda drops.
    {
        const RadialCost inverse = RadialCost::power(-1.0, std::max(p.big_r, 1.0));
        const std::vector<LambdaLimitRow> rows = lambda_limit_experiment(
            inverse, 1.0, p.lambdas, seed.with_stream(seed.stream + 7 * kBlock / 8), p.n);

        TestReport limit_value;
        limit_value.name = "control.lambda-limit.closed-form-value";
        limit_value.n = p.n;
        limit_value.statistic = rows.empty() ? 0.0 : std::abs(rows.front().limit - 2.0);
        limit_value.threshold = 1e-7;
        limit_value.pass = limit_value.statistic <= limit_value.threshold;
        reports.push_back(std::move(limit_value));

        TestReport monotone;
        monotone.name = "control.lambda-limit.gap-decrease";
        monotone.n = p.n;
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
            const double sigma = std::hypot(rows[i].cost.std_error, rows[i + 1].cost.std_error);
            worst = std::max(worst, (rows[i + 1].gap - rows[i].gap) / sigma);
        }
        monotone.statistic = rows.size() < 2 ? 0.0 : worst;
        // Each gap must shrink by at least three combined standard errors.
        monotone.threshold = -3.0;
        monotone.pass = monotone.statistic <= monotone.threshold;
        for (const auto& row : rows) {
            monotone.details.emplace_back(num_tag("gap.l=", row.lambda),
                                          format_double(row.gap));
            monotone.details.emplace_back(num_tag("mean.l=", row.lambda),
                                          format_double(row.cost.mean));
        }
        reports.push_back(std::move(monotone));
    }

    return reports;
}

}  // namespace battery

std::vector<TestReport> run_acceptance_battery(const RunConfig& config) {
    std::vector<TestReport> all;
    auto append = [&all](std::vector<TestReport> group) {
        for (TestReport& r : group) all.push_back(std::move(r));
    };
    append(battery::exact_radius(config));
    append(battery::angle_uniformity(config));
    append(battery::angle_independence(config));
    append(battery::shared_noise_offsets(config));
    append(battery::reconstruction_refinement(config));
    append(battery::lambda_mean_identity(config));
    append(battery::origin_return_dichotomy(config));
    append(battery::hitting_angle(config));
    append(battery::scaling_law(config));
    append(battery::tsirelson_properties(config));
    append(battery::tanaka_properties(config));
    append(battery::control_identities(config));
    return all;
}

namespace {

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("run_suite: cannot open " + path.string());
    os << contents;
}

std::string polar_csv(const PolarPath& path) {
    std::ostringstream os;
    os << "t,theta,lifted,b,x1,x2\n";
    for (std::size_t i = 0; i < path.size(); ++i) {
        const auto planar = path.planar(i);
        os << format_double(path.grid[i]) << ',' << format_double(path.angle[i]) << ','
           << format_double(path.lifted[i]) << ',' << format_double(path.driver[i]) << ','
           << format_double(planar[0]) << ',' << format_double(planar[1]) << '\n';
    }
    return os.str();
}

}  // namespace

SuiteOutcome run_suite(const RunConfig& config) {
    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);

    SuiteOutcome outcome;
    outcome.reports = run_acceptance_battery(config);
    outcome.all_pass = true;
    for (const TestReport& r : outcome.reports) outcome.all_pass = outcome.all_pass && r.pass;

    // summary.csv: one row per check.
    {
        std::ostringstream os;
        os << TestReport::csv_header() << '\n';
        for (const TestReport& r : outcome.reports) os << r.csv_row() << '\n';
        write_text_file(config.out_dir / "summary.csv", os.str());
    }

    // Sample tangential path: the polar dump and the figure pair.
    {
        const TimeGrid grid = TimeGrid::logspaced(1e-4, 1.0, 801);
        const PolarPath path = simulate_tangential(block_seed(config, 40), grid);
        write_text_file(config.out_dir / "tangential_path.csv", polar_csv(path));
        if (config.format == RunConfig::Format::csv_svg) {
            const PlanarPath planar = path.to_planar(true);
            ScatterOptions options;
            options.exit_radius = 1.0;
            emit_scatter_file(planar, config.out_dir / "tangential_trajectory.svg", options);
            std::vector<double> radii(path.size());
            for (std::size_t i = 0; i < path.size(); ++i) radii[i] = path.radius(i);
            emit_line_file(grid.times(), radii, config.out_dir / "tangential_radius.svg");
        }
    }

    // Origin-return sweep across epsilon thresholds.
    {
        const auto& p = config.origin_return;
        const double base = p.epsilon;
        const double epsilons[3] = {base * 10.0, base, base / 10.0};
        std::ostringstream os;
        os << "lambda,epsilon,horizon,r0,n,hits,probability,std_error\n";
        std::uint64_t offset = 0;
        const Seed seed = block_seed(config, 41);
        for (double lambda : p.lambdas) {
            const auto rows =
                origin_return_sweep(seed.with_stream(seed.stream + offset),
                                    LambdaParams::from_lambda(lambda), epsilons, p.horizon,
                                    p.n, p.r0, p.steps);
            for (const auto& row : rows) {
                os << format_double(lambda) << ',' << format_double(row.epsilon) << ','
                   << format_double(row.horizon) << ',' << format_double(row.r0) << ',' << row.n
                   << ',' << row.hits << ',' << format_double(row.probability) << ','
                   << format_double(row.std_error) << '\n';
            }
            offset += static_cast<std::uint64_t>(p.n) + 1;
        }
        write_text_file(config.out_dir / "origin_return.csv", os.str());
    }

    // Lambda-limit table.
    {
        const auto& p = config.control;
        const RadialCost inverse = RadialCost::power(-1.0, std::max(p.big_r, 1.0));
        const auto rows =
            lambda_limit_experiment(inverse, 1.0, p.lambdas, block_seed(config, 42), p.n);
        std::ostringstream os;
        os << "lambda,mean,stderr,n,limit,gap\n";
        for (const auto& row : rows) {
            os << format_double(row.lambda) << ',' << format_double(row.cost.mean) << ','
               << format_double(row.cost.std_error) << ',' << row.cost.n << ','
               << format_double(row.limit) << ',' << format_double(row.gap) << '\n';
        }
        write_text_file(config.out_dir / "lambda_limit.csv", os.str());
    }

    // One Tanaka path and one Tsirelson interval table.
    {
        const TimeGrid grid = TimeGrid::uniform(0.0, 1.0, config.tanaka.steps + 1);
        const TanakaPaths paths = simulate_tanaka(block_seed(config, 43), grid);
        std::ostringstream os;
        os << "t,x,w\n";
        for (std::size_t i = 0; i < paths.x.size(); ++i)
            os << format_double(grid[i]) << ',' << format_double(paths.x[i]) << ','
               << format_double(paths.w[i]) << '\n';
        write_text_file(config.out_dir / "tanaka_path.csv", os.str());
    }
    {
        TsirelsonConfig ts;
        ts.depth = config.tsirelson.depth;
        ts.substeps = config.tsirelson.substeps;
        const TsirelsonPath path = simulate_tsirelson(block_seed(config, 44), ts);
        std::ostringstream os;
        os << "k,t_k,b_k\n";
        const int intervals = static_cast<int>(path.b.size());
        for (int j = 0; j < intervals; ++j) {
            os << (j - intervals) << ',' << format_double(path.interval_times[j]) << ','
               << format_double(path.b[static_cast<std::size_t>(j)]) << '\n';
        }
        write_text_file(config.out_dir / "tsirelson_intervals.csv", os.str());
    }

    return outcome;
}

}  // namespace weaksde
