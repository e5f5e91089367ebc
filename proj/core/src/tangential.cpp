#include "weaksde/tangential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace weaksde {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_positive_start(const TimeGrid& grid) {
    if (!(grid.front() > 0.0))
        throw std::domain_error("simulate_tangential: grid must start at t0 > 0");
}

}  // namespace

double PolarPath::radius(std::size_t i) const { return std::sqrt(grid[i]); }

std::array<double, 2> PolarPath::planar(std::size_t i) const {
    const double r = std::sqrt(grid[i]);
    return {r * std::cos(angle[i]), r * std::sin(angle[i])};
}

PlanarPath PolarPath::to_planar(bool prepend_origin) const {
    std::vector<double> t, x1, x2;
    const std::size_t extra = prepend_origin ? 1 : 0;
    t.reserve(size() + extra);
    x1.reserve(size() + extra);
    x2.reserve(size() + extra);
    if (prepend_origin) {
        t.push_back(0.0);
        x1.push_back(0.0);
        x2.push_back(0.0);
    }
    for (std::size_t i = 0; i < size(); ++i) {
        const auto p = planar(i);
        t.push_back(grid[i]);
        x1.push_back(p[0]);
        x2.push_back(p[1]);
    }
    return PlanarPath{TimeGrid::from_times(std::move(t)), std::move(x1), std::move(x2)};
}

PolarPath simulate_tangential(Rng& rng, const TimeGrid& grid, std::optional<double> theta0) {
    check_positive_start(grid);
    const std::size_t n = grid.size();
    PolarPath path{grid, std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};

    path.lifted[0] = theta0 ? wrap_angle(*theta0) : rng.uniform(0.0, kTwoPi);
    path.driver[0] = 0.0;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double t_lo = grid[i];
        const double t_hi = grid[i + 1];
        const double var_theta = std::log(t_hi / t_lo);
        const double dt = t_hi - t_lo;
        const double cov = 2.0 * (std::sqrt(t_hi) - std::sqrt(t_lo));

        const double d_theta = std::sqrt(var_theta) * rng.normal();
        // dB given d theta: exact conditional Gaussian. The residual
        // variance is positive by Cauchy-Schwarz (t^{-1/2} is not constant
        // on the step); clamp guards rounding on extremely fine grids.
        const double cond_mean = (cov / var_theta) * d_theta;
        const double cond_var = std::max(dt - cov * cov / var_theta, 0.0);
        const double d_b = cond_mean + std::sqrt(cond_var) * rng.normal();

        path.lifted[i + 1] = path.lifted[i] + d_theta;
        path.driver[i + 1] = path.driver[i] + d_b;
    }
    for (std::size_t i = 0; i < n; ++i) path.angle[i] = wrap_angle(path.lifted[i]);
    return path;
}

PolarPath simulate_tangential(const Seed& seed, const TimeGrid& grid,
                              std::optional<double> theta0) {
    Rng rng(seed);
    return simulate_tangential(rng, grid, theta0);
}

CircularPath circular_bm(Rng& rng, const TimeGrid& grid, std::optional<double> phi0) {
    const std::size_t n = grid.size();
    CircularPath path{grid, std::vector<double>(n), std::vector<double>(n)};
    path.lifted[0] = phi0 ? wrap_angle(*phi0) : rng.uniform(0.0, kTwoPi);
    for (std::size_t i = 0; i + 1 < n; ++i)
        path.lifted[i + 1] = path.lifted[i] + std::sqrt(grid.dt(i)) * rng.normal();
    for (std::size_t i = 0; i < n; ++i) path.angle[i] = wrap_angle(path.lifted[i]);
    return path;
}

CircularPath circular_bm(const Seed& seed, const TimeGrid& grid, std::optional<double> phi0) {
    Rng rng(seed);
    return circular_bm(rng, grid, phi0);
}

double reconstruct_angle(double theta_from, const PolarPath& path, std::size_t i_from,
                         std::size_t i_to) {
    if (i_from > i_to || i_to >= path.size())
        throw std::invalid_argument("reconstruct_angle: need i_from <= i_to < path size");
    double sum = 0.0;
    for (std::size_t i = i_from; i < i_to; ++i)
        sum += (path.driver[i + 1] - path.driver[i]) / std::sqrt(path.grid[i]);
    return wrap_angle(theta_from + sum);
}

std::pair<PolarPath, PolarPath> shared_noise_pair(const Seed& seed, const TimeGrid& grid,
                                                  double offset) {
    offset = wrap_angle(offset);
    PolarPath first = simulate_tangential(seed, grid);
    PolarPath second = first;
    for (std::size_t i = 0; i < second.size(); ++i) {
        second.lifted[i] = first.lifted[i] + offset;
        second.angle[i] = wrap_angle(second.lifted[i]);
    }
    return {std::move(first), std::move(second)};
}

AngleMarginal angle_marginal_sample(const Seed& seed, double s, int n,
                                    std::span<const std::pair<double, double>> windows) {
    if (n < 1) throw std::invalid_argument("angle_marginal_sample: need n >= 1");
    for (const auto& [a, b] : windows)
        if (!(b > a)) throw std::invalid_argument("angle_marginal_sample: window needs b > a");

    // Event times in log time: s and all window endpoints, sorted.
    std::vector<double> events{s};
    for (const auto& [a, b] : windows) {
        events.push_back(a);
        events.push_back(b);
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    auto index_of = [&](double v) {
        return static_cast<std::size_t>(
            std::lower_bound(events.begin(), events.end(), v) - events.begin());
    };
    const std::size_t idx_s = index_of(s);

    AngleMarginal out;
    out.marginal.resize(static_cast<std::size_t>(n));
    out.increments.assign(windows.size(), std::vector<double>(static_cast<std::size_t>(n)));

    std::vector<double> lifted(events.size());
    for (int rep = 0; rep < n; ++rep) {
        Rng rng(seed.with_stream(seed.stream + static_cast<std::uint64_t>(rep)));
        // Uniform initial angle at the earliest event, then exact Gaussian
        // increments with variance equal to the log-time gaps.
        lifted[0] = rng.uniform(0.0, kTwoPi);
        for (std::size_t i = 0; i + 1 < events.size(); ++i)
            lifted[i + 1] = lifted[i] + std::sqrt(events[i + 1] - events[i]) * rng.normal();

        out.marginal[static_cast<std::size_t>(rep)] = wrap_angle(lifted[idx_s]);
        for (std::size_t w = 0; w < windows.size(); ++w) {
            const double inc = lifted[index_of(windows[w].second)] -
                               lifted[index_of(windows[w].first)];
            out.increments[w][static_cast<std::size_t>(rep)] = inc;
        }
    }
    return out;
}

}  // namespace weaksde
