#include "weaksde/tsirelson.hpp"

#include <cmath>
#include <stdexcept>

#include "weaksde/brownian.hpp"

namespace weaksde {

std::vector<double> TsirelsonConfig::interval_times() const {
    if (!custom_times.empty()) return custom_times;
    std::vector<double> times(static_cast<std::size_t>(depth) + 1);
    for (int k = 0; k <= depth; ++k)
        times[static_cast<std::size_t>(k)] = std::pow(2.0, k - depth);
    times.back() = 1.0;
    return times;
}

void TsirelsonConfig::validate() const {
    if (substeps < 1) throw std::invalid_argument("TsirelsonConfig: substeps must be >= 1");
    if (custom_times.empty()) {
        if (depth < 1) throw std::invalid_argument("TsirelsonConfig: depth must be >= 1");
        return;
    }
    if (custom_times.size() < 2)
        throw std::invalid_argument("TsirelsonConfig: need at least 2 boundaries");
    if (!(custom_times.front() > 0.0))
        throw std::invalid_argument("TsirelsonConfig: boundaries must be strictly positive");
    for (std::size_t i = 1; i < custom_times.size(); ++i)
        if (!(custom_times[i] > custom_times[i - 1]))
            throw std::invalid_argument("TsirelsonConfig: boundaries must be increasing");
    if (custom_times.back() != 1.0)
        throw std::invalid_argument("TsirelsonConfig: boundaries must end at 1");
}

double fractional_part_update(double dx, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("fractional_part_update: dt must be positive");
    const double q = dx / dt;
    double frac = q - std::floor(q);
    if (frac >= 1.0) frac = 0.0;  // rounding when q is a tiny negative number
    return frac;
}

namespace {

/// One interval of the drift recursion, reading driver increments from the
/// stored w values so that a later replay reproduces x bitwise.
void advance_interval(double b, std::span<const double> w, std::size_t base, double dt_sub,
                      int substeps, std::vector<double>& x, std::size_t x_base) {
    for (int i = 0; i < substeps; ++i) {
        const std::size_t g = base + static_cast<std::size_t>(i);
        x[x_base + static_cast<std::size_t>(i) + 1] =
            x[x_base + static_cast<std::size_t>(i)] + b * dt_sub + (w[g + 1] - w[g]);
    }
}

}  // namespace

TsirelsonPath simulate_tsirelson(const Seed& seed, const TsirelsonConfig& config) {
    config.validate();
    const std::vector<double> boundaries = config.interval_times();
    const std::size_t intervals = boundaries.size() - 1;
    const int substeps = config.substeps;

    // Refined grid: every interval split into `substeps` uniform pieces.
    std::vector<double> times;
    times.reserve(intervals * static_cast<std::size_t>(substeps) + 1);
    times.push_back(boundaries[0]);
    for (std::size_t j = 0; j < intervals; ++j) {
        const double lo = boundaries[j];
        const double hi = boundaries[j + 1];
        for (int i = 1; i <= substeps; ++i)
            times.push_back(lo + (hi - lo) * static_cast<double>(i) / substeps);
        times.back() = hi;
    }
    TimeGrid grid = TimeGrid::from_times(std::move(times));

    Rng rng(seed);
    const double b_injected = rng.uniform01();
    Path w = sample_brownian(rng, grid);

    std::vector<double> x(grid.size(), 0.0);
    std::vector<double> b(intervals, 0.0);
    b[0] = b_injected;
    for (std::size_t j = 0; j < intervals; ++j) {
        const std::size_t base = j * static_cast<std::size_t>(substeps);
        const double dt_sub = (boundaries[j + 1] - boundaries[j]) / substeps;
        advance_interval(b[j], w.values(), base, dt_sub, substeps, x, base);
        if (j + 1 < intervals) {
            const double dx = x[base + static_cast<std::size_t>(substeps)] - x[base];
            b[j + 1] = fractional_part_update(dx, boundaries[j + 1] - boundaries[j]);
        }
    }

    TsirelsonPath out{Path(grid, std::move(x)), std::move(w), boundaries, std::move(b), substeps};
    return out;
}

double TsirelsonPath::drift_at_boundary(int k) const {
    const int intervals = static_cast<int>(b.size());
    // t_k with k = 0 is the window end; the drift at t_k is the level of
    // the interval ending there.
    const int j = k + intervals - 1;
    if (j < 0 || j >= intervals)
        throw std::invalid_argument("drift_at_boundary: k out of the simulated window");
    return b[static_cast<std::size_t>(j)];
}

std::vector<double> tsirelson_reconstruct(const TsirelsonPath& path, std::size_t interval_j,
                                          double b_at_interval, double x_at_interval) {
    const std::size_t intervals = path.b.size();
    if (interval_j >= intervals)
        throw std::invalid_argument("tsirelson_reconstruct: interval index out of range");
    const int substeps = path.substeps;

    const std::size_t remaining = intervals - interval_j;
    std::vector<double> x(remaining * static_cast<std::size_t>(substeps) + 1);
    x[0] = x_at_interval;
    double b = b_at_interval;
    for (std::size_t j = interval_j; j < intervals; ++j) {
        const std::size_t w_base = j * static_cast<std::size_t>(substeps);
        const std::size_t x_base = (j - interval_j) * static_cast<std::size_t>(substeps);
        const double dt_j = path.interval_times[j + 1] - path.interval_times[j];
        advance_interval(b, path.w.values(), w_base, dt_j / substeps, substeps, x, x_base);
        const double dx = x[x_base + static_cast<std::size_t>(substeps)] - x[x_base];
        b = fractional_part_update(dx, dt_j);
    }
    return x;
}

}  // namespace weaksde
