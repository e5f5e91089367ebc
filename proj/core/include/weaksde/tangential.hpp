#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "weaksde/path.hpp"
#include "weaksde/rng.hpp"
#include "weaksde/stats.hpp"
#include "weaksde/time_grid.hpp"

namespace weaksde {

/// Planar tangential-motion path in polar form. The radius is not stored:
/// it equals sqrt(t) at every grid time by construction, which is what the
/// exact-radius checks rely on.
struct PolarPath {
    TimeGrid grid;                 // first time > 0
    std::vector<double> lifted;    // unwrapped angle
    std::vector<double> angle;     // lifted wrapped to [0, 2*pi)
    std::vector<double> driver;    // driving Brownian motion, 0 at grid start

    std::size_t size() const { return lifted.size(); }
    double radius(std::size_t i) const;
    std::array<double, 2> planar(std::size_t i) const;  // sqrt(t_i) (cos, sin)

    /// Planar dump; optionally prepends the origin at t = 0.
    PlanarPath to_planar(bool prepend_origin = false) const;
};

/// Simulates the tangential motion on a grid with t0 > 0 by sampling the
/// per-step pair (d theta, dB) from its exact joint Gaussian law:
///   Var d theta = log(t_{i+1}/t_i),   Var dB = dt,
///   Cov(dB, d theta) = 2 (sqrt(t_{i+1}) - sqrt(t_i)).
/// When theta0 is absent, the angle at the first grid time is drawn
/// uniformly on [0, 2*pi) (the weak-solution angle injection). Works on any
/// strictly increasing grid with t0 > 0; log spacing gives constant
/// per-step angle variance.
PolarPath simulate_tangential(Rng& rng, const TimeGrid& grid,
                              std::optional<double> theta0 = {});
PolarPath simulate_tangential(const Seed& seed, const TimeGrid& grid,
                              std::optional<double> theta0 = {});

/// Torus-valued Brownian motion on a grid of (possibly negative) real
/// times: lifted increments are N(0, dt). Start angle uniform when absent.
struct CircularPath {
    TimeGrid grid;
    std::vector<double> lifted;
    std::vector<double> angle;
    std::size_t size() const { return lifted.size(); }
};
CircularPath circular_bm(Rng& rng, const TimeGrid& grid, std::optional<double> phi0 = {});
CircularPath circular_bm(const Seed& seed, const TimeGrid& grid, std::optional<double> phi0 = {});

/// Rebuilds the angle at grid index i_to from its value at i_from and the
/// driver increments: theta_from + sum_i t_i^{-1/2} dB_i (left point),
/// wrapped to the torus. i_from == i_to returns theta_from (empty sum);
/// i_from > i_to is an error.
double reconstruct_angle(double theta_from, const PolarPath& path, std::size_t i_from,
                         std::size_t i_to);

/// Two tangential solutions driven by identical Brownian increments whose
/// initial angles differ by `offset`: their lifted angular difference is
/// the constant offset at every grid point.
std::pair<PolarPath, PolarPath> shared_noise_pair(const Seed& seed, const TimeGrid& grid,
                                                  double offset);

/// i.i.d. samples of the time-changed angle marginal theta_{e^s}, plus the
/// paired lifted increments theta_{e^b} - theta_{e^a} for each requested
/// window (a, b) in log time. Sampling is exact on the event times; no
/// discretization is involved.
struct AngleMarginal {
    std::vector<double> marginal;                 // one angle per replica, in [0, 2*pi)
    std::vector<std::vector<double>> increments;  // [window][replica], lifted
};
AngleMarginal angle_marginal_sample(const Seed& seed, double s, int n,
                                    std::span<const std::pair<double, double>> windows = {});

}  // namespace weaksde
