#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "weaksde/rng.hpp"
#include "weaksde/stats.hpp"
#include "weaksde/time_grid.hpp"

namespace weaksde {

/// lambda in (0, 1) together with the Bessel dimension delta = lambda^{-2}
/// of the rescaled squared-radius process.
struct LambdaParams {
    double lambda = 0.0;
    double delta = 0.0;

    static LambdaParams from_lambda(double lambda);

    /// lambda <= sqrt(2)/2, equivalently delta >= 2: the origin is polar.
    /// Classified on lambda so the representable critical value lands on
    /// the polar side.
    bool origin_polar() const { return lambda <= std::numbers::sqrt2 / 2.0; }
};

/// One exact transition of a squared Bessel process of dimension delta > 0:
/// Z' given Z = z over dt is dt times a noncentral chi-square with delta
/// degrees of freedom and noncentrality z/dt, sampled as a Poisson mixture
/// of gamma variates (valid for every real delta > 0). z = 0 gives the
/// entrance law.
double besq_step(Rng& rng, double z, double dt, double delta);

/// Radius below this floor flags the step; flagged steps contribute no
/// driver or angle increment and are excluded from angle statistics.
inline constexpr double kRadiusFloor = 1e-8;

/// Squared radius, radius and the driver recovered from the radius SDE.
struct RadiusPath {
    TimeGrid grid;
    std::vector<double> z;
    std::vector<double> r;
    std::vector<double> implied_driver;   // 0 at grid start
    std::vector<std::uint8_t> floored;    // one flag per step (size-1 entries)
    double lambda = 0.0;

    std::size_t size() const { return z.size(); }
    bool any_floored() const;
};

struct LambdaPath {
    RadiusPath radius;
    std::vector<double> lifted;
    std::vector<double> angle;

    std::size_t size() const { return lifted.size(); }
};

/// Simulates the lambda-family solution on the grid. The radius is exact:
/// chained noncentral chi-square transitions on the rescaled clock
/// (dt' = lambda^2 dt, dimension lambda^{-2}), entrance from zero when the
/// grid starts at 0 or when no z0 is given. The driver is derived from the
/// radius increments, and the angle is an Euler step driven by it. theta0
/// absent draws the angle uniformly at the first grid point.
LambdaPath simulate_lambda(Rng& rng, const LambdaParams& params, const TimeGrid& grid,
                           std::optional<double> theta0 = {}, std::optional<double> z0 = {});
LambdaPath simulate_lambda(const Seed& seed, const LambdaParams& params, const TimeGrid& grid,
                           std::optional<double> theta0 = {}, std::optional<double> z0 = {});

/// First grid crossing of the radius level rho. With bridge_correct the
/// crossing time is placed inside the step by linear first-passage
/// interpolation instead of at the right grid point. A path that starts at
/// or above rho has tau = t0. `hit == false` (with tau at the horizon) when
/// the level is never reached on the grid.
struct HittingSample {
    double rho = 0.0;
    double tau = 0.0;
    double angle_at_tau = 0.0;  // filled by the LambdaPath overload
    std::size_t index = 0;      // grid index of the crossing point
    bool hit = false;
};
HittingSample hitting_time(const RadiusPath& path, double rho, bool bridge_correct = false);
HittingSample hitting_time(const LambdaPath& path, double rho, bool bridge_correct = false);

/// Monte Carlo estimate of P(min_t R_t < epsilon before the horizon),
/// started from radius r0, on a uniform grid. Near-zero excursions between
/// grid points are not visible; the epsilon sweep in the CLI reports the
/// estimate across thresholds.
struct OriginReturnEstimate {
    double probability = 0.0;
    double std_error = 0.0;
    int n = 0;
    long long hits = 0;
    double epsilon = 0.0;
    double horizon = 0.0;
    double r0 = 0.0;
};
OriginReturnEstimate return_to_origin_experiment(const Seed& seed, const LambdaParams& params,
                                                 double epsilon, double horizon, int n,
                                                 double r0 = 1.0, int steps = 4000);

/// Same experiment across several epsilon thresholds, evaluated on one set
/// of simulated paths (each replica tracks its minimum radius once).
std::vector<OriginReturnEstimate> origin_return_sweep(const Seed& seed,
                                                      const LambdaParams& params,
                                                      std::span<const double> epsilons,
                                                      double horizon, int n, double r0 = 1.0,
                                                      int steps = 4000);

/// Lifted angle and crossing time at each requested radius (ascending),
/// for one replica started from the origin entrance. Time steps are
/// geometric, so the discretized system is scale covariant and radius
/// ladders that differ by a power of four share one law exactly.
struct ShellSample {
    std::vector<double> theta;  // lifted angle at each radius
    std::vector<double> tau;    // crossing times (interpolated within the step)
    bool complete = false;
};
ShellSample sample_radius_crossings(Rng& rng, const LambdaParams& params,
                                    std::span<const double> radii, int steps_per_quad = 64,
                                    int max_steps = 400000);

/// Two-sample check that the angle increment between the hitting times of
/// rho0 and rho1 agrees in law with the increment between sqrt(alpha)*rho0
/// and sqrt(alpha)*rho1: largest ECF distance over frequencies {1,2,3},
/// threshold 3/sqrt(n) per frequency.
TestReport scaling_check(const Seed& seed, const LambdaParams& params, double rho0, double rho1,
                         double alpha, int n);

/// Distributional checks at the first hitting time of radius rho, for
/// lambda in (0, sqrt(2)/2): uniformity of the hitting angle, ECF
/// factorization against the next shell increment, strict single-shell ECF
/// contraction, and the N-level dyadic product law.
struct AngleHittingReports {
    TestReport uniformity;
    TestReport independence;
    TestReport shell_contraction;
    TestReport power_decay;
};
AngleHittingReports angle_at_hitting_tests(const Seed& seed, const LambdaParams& params,
                                           double rho, int n);

}  // namespace weaksde
