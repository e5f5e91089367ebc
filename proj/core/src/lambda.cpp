#include "weaksde/lambda.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "weaksde/path.hpp"

namespace weaksde {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfSqrt2 = std::numbers::sqrt2 / 2.0;

}  // namespace

LambdaParams LambdaParams::from_lambda(double lambda) {
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw std::invalid_argument("LambdaParams: lambda must lie in (0, 1)");
    return LambdaParams{lambda, 1.0 / (lambda * lambda)};
}

double besq_step(Rng& rng, double z, double dt, double delta) {
    if (z < 0.0) throw std::invalid_argument("besq_step: z must be nonnegative");
    if (!(dt > 0.0)) throw std::invalid_argument("besq_step: dt must be positive");
    if (!(delta > 0.0)) throw std::invalid_argument("besq_step: delta must be positive");
    const std::int64_t mixing = rng.poisson(z / (2.0 * dt));
    const double shape = 0.5 * delta + static_cast<double>(mixing);
    return dt * rng.gamma(shape, 2.0);
}

bool RadiusPath::any_floored() const {
    for (auto f : floored)
        if (f) return true;
    return false;
}

LambdaPath simulate_lambda(Rng& rng, const LambdaParams& params, const TimeGrid& grid,
                           std::optional<double> theta0, std::optional<double> z0) {
    if (grid.front() < 0.0)
        throw std::invalid_argument("simulate_lambda: grid must start at t0 >= 0");
    if (z0 && *z0 < 0.0) throw std::invalid_argument("simulate_lambda: z0 must be nonnegative");

    const double lam = params.lambda;
    const double lam2 = lam * lam;
    const double tangential_load = std::sqrt(1.0 - lam2);
    const std::size_t n = grid.size();

    RadiusPath radius{grid,
                      std::vector<double>(n),
                      std::vector<double>(n),
                      std::vector<double>(n),
                      std::vector<std::uint8_t>(n - 1, 0),
                      lam};

    if (z0) {
        radius.z[0] = *z0;
    } else if (grid.front() == 0.0) {
        radius.z[0] = 0.0;
    } else {
        // Entrance from the origin: one exact transition over [0, t0].
        radius.z[0] = besq_step(rng, 0.0, lam2 * grid.front(), params.delta);
    }
    radius.r[0] = std::sqrt(radius.z[0]);
    radius.implied_driver[0] = 0.0;

    LambdaPath path{std::move(radius), std::vector<double>(n), std::vector<double>(n)};
    path.lifted[0] = theta0 ? wrap_angle(*theta0) : rng.uniform(0.0, kTwoPi);

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double dt = grid.dt(i);
        const double z_next = besq_step(rng, path.radius.z[i], lam2 * dt, params.delta);
        path.radius.z[i + 1] = z_next;
        path.radius.r[i + 1] = std::sqrt(z_next);

        const double r_here = path.radius.r[i];
        if (r_here <= kRadiusFloor) {
            // Drift singularity: no driver or angle increment for this step.
            path.radius.floored[i] = 1;
            path.radius.implied_driver[i + 1] = path.radius.implied_driver[i];
            path.lifted[i + 1] = path.lifted[i];
            continue;
        }
        const double dr = path.radius.r[i + 1] - r_here;
        const double db = (dr - (1.0 - lam2) / (2.0 * r_here) * dt) / lam;
        path.radius.implied_driver[i + 1] = path.radius.implied_driver[i] + db;
        path.lifted[i + 1] = path.lifted[i] + tangential_load * db / r_here -
                             lam * tangential_load * dt / (r_here * r_here);
    }
    for (std::size_t i = 0; i < n; ++i) path.angle[i] = wrap_angle(path.lifted[i]);
    return path;
}

LambdaPath simulate_lambda(const Seed& seed, const LambdaParams& params, const TimeGrid& grid,
                           std::optional<double> theta0, std::optional<double> z0) {
    Rng rng(seed);
    return simulate_lambda(rng, params, grid, theta0, z0);
}

HittingSample hitting_time(const RadiusPath& path, double rho, bool bridge_correct) {
    if (!(rho > 0.0)) throw std::invalid_argument("hitting_time: rho must be positive");
    HittingSample out;
    out.rho = rho;
    if (path.r[0] >= rho) {
        out.tau = path.grid[0];
        out.index = 0;
        out.hit = true;
        return out;
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (path.r[i + 1] >= rho) {
            out.index = i + 1;
            out.hit = true;
            if (bridge_correct) {
                const double frac = (rho - path.r[i]) / (path.r[i + 1] - path.r[i]);
                out.tau = path.grid[i] + frac * path.grid.dt(i);
            } else {
                out.tau = path.grid[i + 1];
            }
            return out;
        }
    }
    out.hit = false;
    out.index = path.size() - 1;
    out.tau = path.grid.back();
    return out;
}

HittingSample hitting_time(const LambdaPath& path, double rho, bool bridge_correct) {
    HittingSample out = hitting_time(path.radius, rho, bridge_correct);
    out.angle_at_tau = path.angle[out.index];
    return out;
}

OriginReturnEstimate return_to_origin_experiment(const Seed& seed, const LambdaParams& params,
                                                 double epsilon, double horizon, int n, double r0,
                                                 int steps) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("return_to_origin: epsilon must be positive");
    if (!(horizon > 0.0)) throw std::invalid_argument("return_to_origin: horizon must be positive");
    if (!(r0 > 0.0)) throw std::invalid_argument("return_to_origin: r0 must be strictly positive");
    if (n < 1 || steps < 1) throw std::invalid_argument("return_to_origin: need n, steps >= 1");

    const double lam2 = params.lambda * params.lambda;
    const double dt = horizon / steps;
    const double eps2 = epsilon * epsilon;
    long long hits = 0;
    for (int rep = 0; rep < n; ++rep) {
        Rng rng(seed.with_stream(seed.stream + static_cast<std::uint64_t>(rep)));
        double z = r0 * r0;
        bool hit = z < eps2;
        for (int i = 0; i < steps && !hit; ++i) {
            z = besq_step(rng, z, lam2 * dt, params.delta);
            hit = z < eps2;
        }
        hits += hit ? 1 : 0;
    }
    OriginReturnEstimate out;
    out.n = n;
    out.hits = hits;
    out.probability = static_cast<double>(hits) / n;
    out.std_error = std::sqrt(out.probability * (1.0 - out.probability) / n);
    out.epsilon = epsilon;
    out.horizon = horizon;
    out.r0 = r0;
    return out;
}

std::vector<OriginReturnEstimate> origin_return_sweep(const Seed& seed,
                                                      const LambdaParams& params,
                                                      std::span<const double> epsilons,
                                                      double horizon, int n, double r0,
                                                      int steps) {
    for (double eps : epsilons)
        if (!(eps > 0.0)) throw std::invalid_argument("origin_return_sweep: epsilon must be > 0");
    if (!(horizon > 0.0)) throw std::invalid_argument("origin_return_sweep: horizon must be > 0");
    if (!(r0 > 0.0)) throw std::invalid_argument("origin_return_sweep: r0 must be > 0");
    if (n < 1 || steps < 1) throw std::invalid_argument("origin_return_sweep: need n, steps >= 1");

    const double lam2 = params.lambda * params.lambda;
    const double dt = horizon / steps;
    std::vector<long long> hits(epsilons.size(), 0);
    for (int rep = 0; rep < n; ++rep) {
        Rng rng(seed.with_stream(seed.stream + static_cast<std::uint64_t>(rep)));
        double z = r0 * r0;
        double min_z = z;
        for (int i = 0; i < steps; ++i) {
            z = besq_step(rng, z, lam2 * dt, params.delta);
            min_z = std::min(min_z, z);
        }
        for (std::size_t e = 0; e < epsilons.size(); ++e)
            if (min_z < epsilons[e] * epsilons[e]) ++hits[e];
    }

    std::vector<OriginReturnEstimate> out(epsilons.size());
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
        out[e].n = n;
        out[e].hits = hits[e];
        out[e].probability = static_cast<double>(hits[e]) / n;
        out[e].std_error = std::sqrt(out[e].probability * (1.0 - out[e].probability) / n);
        out[e].epsilon = epsilons[e];
        out[e].horizon = horizon;
        out[e].r0 = r0;
    }
    return out;
}

ShellSample sample_radius_crossings(Rng& rng, const LambdaParams& params,
                                    std::span<const double> radii, int steps_per_quad,
                                    int max_steps) {
    if (radii.empty()) throw std::invalid_argument("sample_radius_crossings: no radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0))
            throw std::invalid_argument("sample_radius_crossings: radii must be positive");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw std::invalid_argument("sample_radius_crossings: radii must be ascending");
    }
    if (steps_per_quad < 1) throw std::invalid_argument("sample_radius_crossings: steps_per_quad");

    const double lam = params.lambda;
    const double lam2 = lam * lam;
    const double tangential_load = std::sqrt(1.0 - lam2);
    // Start far below the first shell so the entrance transient is common
    // to every dyadic level; geometric steps keep the chain scale covariant.
    const double t_start = radii.front() * radii.front() / 4096.0;
    const double growth = std::pow(4.0, 1.0 / steps_per_quad);

    ShellSample out;
    out.theta.assign(radii.size(), 0.0);
    out.tau.assign(radii.size(), 0.0);

    double t = t_start;
    double z = besq_step(rng, 0.0, lam2 * t_start, params.delta);
    double r = std::sqrt(z);
    double theta = rng.uniform(0.0, kTwoPi);
    std::size_t next = 0;
    while (next < radii.size() && r >= radii[next]) {
        out.theta[next] = theta;
        out.tau[next] = t;
        ++next;
    }

    for (int step = 0; step < max_steps && next < radii.size(); ++step) {
        const double dt = t * (growth - 1.0);
        const double z_next = besq_step(rng, z, lam2 * dt, params.delta);
        const double r_next = std::sqrt(z_next);
        if (r > kRadiusFloor) {
            const double db = ((r_next - r) - (1.0 - lam2) / (2.0 * r) * dt) / lam;
            theta += tangential_load * db / r - lam * tangential_load * dt / (r * r);
        }
        const double t_next = t + dt;
        while (next < radii.size() && r_next >= radii[next]) {
            out.theta[next] = theta;
            out.tau[next] = (r_next > r && radii[next] > r)
                                ? t + dt * (radii[next] - r) / (r_next - r)
                                : t_next;
            ++next;
        }
        t = t_next;
        z = z_next;
        r = r_next;
    }
    out.complete = next == radii.size();
    return out;
}

namespace {

/// Gathers n complete shell samples, retrying censored replicas on fresh
/// streams (deterministic: the stream counter only moves forward).
std::vector<ShellSample> gather_shell_samples(const Seed& seed, const LambdaParams& params,
                                              std::span<const double> radii, int n,
                                              std::uint64_t stream_base) {
    std::vector<ShellSample> out;
    out.reserve(static_cast<std::size_t>(n));
    std::uint64_t stream = seed.stream + stream_base;
    int guard = 0;
    while (out.size() < static_cast<std::size_t>(n)) {
        Rng rng(seed.with_stream(stream++));
        ShellSample s = sample_radius_crossings(rng, params, radii);
        if (s.complete) {
            out.push_back(std::move(s));
            guard = 0;
        } else if (++guard > 100) {
            throw std::runtime_error("shell sampling: too many censored replicas");
        }
    }
    return out;
}

}  // namespace

TestReport scaling_check(const Seed& seed, const LambdaParams& params, double rho0, double rho1,
                         double alpha, int n) {
    if (!(rho0 > 0.0) || !(rho1 > rho0))
        throw std::invalid_argument("scaling_check: need 0 < rho0 < rho1");
    if (!(alpha > 0.0)) throw std::invalid_argument("scaling_check: alpha must be positive");
    if (n < 8) throw std::invalid_argument("scaling_check: need n >= 8");

    const double root = std::sqrt(alpha);
    const double base_radii[2] = {rho0, rho1};
    const double scaled_radii[2] = {root * rho0, root * rho1};

    const auto base = gather_shell_samples(seed, params, base_radii, n, 0);
    const auto scaled = gather_shell_samples(seed, params, scaled_radii, n,
                                             static_cast<std::uint64_t>(n) * 2);

    std::vector<double> inc_base(base.size()), inc_scaled(scaled.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        inc_base[i] = base[i].theta[1] - base[i].theta[0];
    for (std::size_t i = 0; i < scaled.size(); ++i)
        inc_scaled[i] = scaled[i].theta[1] - scaled[i].theta[0];

    const TorusSample sample_base = TorusSample::wrap(inc_base);
    const TorusSample sample_scaled = TorusSample::wrap(inc_scaled);

    TestReport report;
    report.name = "scaling-check";
    report.n = n;
    report.threshold = 3.0 / std::sqrt(static_cast<double>(n));
    report.statistic = 0.0;
    for (int k = 1; k <= 3; ++k) {
        const double d = std::abs(torus_ecf(k, sample_base) - torus_ecf(k, sample_scaled));
        report.statistic = std::max(report.statistic, d);
        report.details.emplace_back("ecf_distance_k" + std::to_string(k), format_double(d));
    }
    report.pass = report.statistic <= report.threshold;
    report.details.emplace_back("alpha", format_double(alpha));
    return report;
}

AngleHittingReports angle_at_hitting_tests(const Seed& seed, const LambdaParams& params,
                                           double rho, int n) {
    if (!(params.lambda > 0.0) || !(params.lambda < kHalfSqrt2))
        throw std::invalid_argument(
            "angle_at_hitting_tests: lambda must lie in (0, sqrt(2)/2)");
    if (!(rho > 0.0)) throw std::invalid_argument("angle_at_hitting_tests: rho must be positive");
    if (n < 8) throw std::invalid_argument("angle_at_hitting_tests: need n >= 8");

    // Dyadic ladder rho/16 .. rho, plus 2*rho for the forward increment.
    constexpr int kLevels = 4;
    std::vector<double> radii;
    for (int j = kLevels; j >= 0; --j) radii.push_back(rho * std::pow(2.0, -j));
    radii.push_back(2.0 * rho);
    const std::size_t idx_rho = kLevels;

    const auto samples = gather_shell_samples(seed, params, radii, n, 0);

    std::vector<double> at_rho(samples.size()), forward_inc(samples.size()),
        last_shell(samples.size());
    std::vector<std::vector<double>> shells(samples.size(), std::vector<double>(kLevels));
    for (std::size_t i = 0; i < samples.size(); ++i) {
        at_rho[i] = samples[i].theta[idx_rho];
        forward_inc[i] = samples[i].theta[idx_rho + 1] - samples[i].theta[idx_rho];
        last_shell[i] = samples[i].theta[idx_rho] - samples[i].theta[idx_rho - 1];
        for (int j = 0; j < kLevels; ++j)
            shells[i][static_cast<std::size_t>(j)] =
                samples[i].theta[static_cast<std::size_t>(j + 1)] -
                samples[i].theta[static_cast<std::size_t>(j)];
    }

    AngleHittingReports out;
    out.uniformity = kuiper_test(TorusSample::wrap(at_rho), 0.01, "hitting-angle-uniformity");
    out.independence = ecf_independence(TorusSample::wrap(at_rho), TorusSample::wrap(forward_inc),
                                        1, 1, "hitting-angle-independence");

    // Strict contraction of one dyadic shell: |E e_1(increment)| must sit
    // below 1 by at least five standard errors of its projection.
    {
        const TorusSample shell = TorusSample::wrap(last_shell);
        const std::complex<double> ecf = torus_ecf(1, shell);
        const double mag = std::abs(ecf);
        const double phase = std::arg(ecf);
        std::vector<double> projections(shell.size());
        for (std::size_t i = 0; i < shell.size(); ++i)
            projections[i] = std::cos(shell.values()[i] - phase);
        const MeanStderr ms = mean_stderr(projections);
        TestReport rep;
        rep.name = "shell-ecf-contraction";
        rep.n = n;
        rep.statistic = mag;
        rep.threshold = 1.0 - 5.0 * ms.std_error;
        rep.pass = rep.statistic <= rep.threshold;
        rep.details.emplace_back("std_error", format_double(ms.std_error));
        out.shell_contraction = std::move(rep);
    }

    out.power_decay = dyadic_decay(shells, 1, "dyadic-power-decay");
    return out;
}

}  // namespace weaksde
