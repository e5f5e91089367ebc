#pragma once

#include <vector>

#include "weaksde/path.hpp"
#include "weaksde/rng.hpp"

namespace weaksde {

/// Truncated drift-recursion setup: interval boundaries t_k = 2^k for
/// k = -depth..0 (so the simulated window is [2^-depth, 1]), each interval
/// refined into `substeps` uniform integration steps. A custom boundary
/// sequence may be supplied instead; it must be strictly increasing,
/// strictly positive and end at 1.
struct TsirelsonConfig {
    int depth = 6;
    int substeps = 8;
    std::vector<double> custom_times;  // optional override of the dyadic default

    std::vector<double> interval_times() const;  // depth+1 boundaries
    void validate() const;
};

/// Simulated path on the refined grid plus the per-interval drift levels.
/// b[j] is the drift on (times[j], times[j+1]]; the first level is injected
/// uniformly on [0, 1), every later level is the fractional part of the
/// previous interval's slope.
struct TsirelsonPath {
    Path x;
    Path w;                              // driver, 0 at the window start
    std::vector<double> interval_times;  // boundaries, length = intervals+1
    std::vector<double> b;               // drift per interval, length = intervals
    int substeps = 1;

    /// Drift at the interval boundary t_k (k = -intervals+1 .. 0), i.e. the
    /// drift of the interval ending at t_k.
    double drift_at_boundary(int k) const;
};

TsirelsonPath simulate_tsirelson(const Seed& seed, const TsirelsonConfig& config);

/// frac(dx/dt) = dx/dt - floor(dx/dt), in [0, 1). dt must be positive.
double fractional_part_update(double dx, double dt);

/// Replays the drift recursion from the start of interval j using the
/// stored driver increments: returns the x values on the refined grid from
/// that point on (bitwise identical to the simulated path).
std::vector<double> tsirelson_reconstruct(const TsirelsonPath& path, std::size_t interval_j,
                                          double b_at_interval, double x_at_interval);

}  // namespace weaksde
