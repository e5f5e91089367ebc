#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weaksde/rng.hpp"
#include "weaksde/stats.hpp"

namespace weaksde {

/// Radially symmetric running cost f(x) = f(|x|), one of three families:
/// a constant, a power r^p, or a table with linear interpolation.
class RadialCost {
public:
    enum class Family { constant, power, tabulated };

    static RadialCost constant(double c, double domain_radius);
    /// f(r) = r^p. Ring integrals from 0 are finite only for p > -2.
    static RadialCost power(double exponent, double domain_radius);
    static RadialCost tabulated(std::vector<double> radii, std::vector<double> values,
                                double domain_radius);

    /// Parses "const:<c>", "power:<p>" or a bare number (constant).
    static RadialCost parse(std::string_view text, double domain_radius);

    double operator()(double r) const;
    Family family() const { return family_; }
    double domain_radius() const { return domain_radius_; }
    double exponent() const { return exponent_; }
    std::string label() const;

private:
    RadialCost() = default;
    Family family_ = Family::constant;
    double constant_ = 1.0;
    double exponent_ = 0.0;
    double domain_radius_ = 1.0;
    std::vector<double> tab_r_, tab_f_;
};

/// 2 * integral_a^b xi f(xi) dxi: the ring cost of deterministic-radius
/// motion between radii a and b. Constants integrate in closed form; the
/// other families go through adaptive quadrature at relative tolerance
/// 1e-8 (endpoint singularities of the power family are handled by the
/// quadrature). Divergent cases (power p <= -2 with a = 0) are a domain
/// error.
double ring_cost_integral(const RadialCost& f, double a, double b);

/// Expected running cost of tangential motion from the origin to radius
/// eta: the closed form 2 * integral_0^eta xi f(xi) dxi.
double tangential_cost_closed_form(const RadialCost& f, double eta);

/// A control strategy with unit-trace diffusion. Radial moves as a 1-D
/// Brownian motion along a fixed line through the current position;
/// Tangential moves perpendicular to it (deterministic radius); Lambda
/// blends the two; SwitchAtRadius runs the inner strategy until the switch
/// radius and the outer strategy afterwards.
class Strategy {
public:
    enum class Kind { radial, tangential, lambda, switch_at_radius };

    static Strategy radial();
    static Strategy tangential();
    static Strategy lambda(double lambda);
    static Strategy switch_at_radius(double rho, Strategy inner, Strategy outer);

    /// Parses "radial" | "tangential" | "lambda:<l>" |
    /// "switch:<rho>:<inner>:<outer>" (inner/outer must be leaf kinds).
    static Strategy parse(std::string_view text);

    Kind kind() const { return kind_; }
    double lambda_value() const { return lambda_; }
    double switch_radius() const { return switch_radius_; }
    const Strategy& inner() const;
    const Strategy& outer() const;
    std::string label() const;

private:
    Strategy() = default;
    Kind kind_ = Kind::tangential;
    double lambda_ = 0.0;
    double switch_radius_ = 0.0;
    std::shared_ptr<const Strategy> inner_, outer_;
};

struct CostEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long long n = 0;
    bool truncated = false;      // integrand near 0 regularized or analytic head added
    bool overflow_flag = false;  // running integral exceeded the overflow guard
};

struct CostSimOptions {
    double origin_time_fraction = 1e-6;  // analytic head [0, t0], t0 = fraction * stop^2
    int steps_per_quad = 64;             // geometric resolution of lambda radius paths
    int radial_steps = 8192;             // uniform steps per stop^2 of radial time
    double horizon_multiple = 50.0;      // give up beyond horizon_multiple * stop^2
    double regularize_radius = 1e-8;     // clamp f evaluations below this radius
    double overflow_guard = 1e12;
};

/// Monte Carlo mean of integral_0^tau f(|X_t|) dt for the strategy started
/// at start_radius and stopped at the first hitting of stop_radius, with
/// the time integral taken by the trapezoid rule on the simulation grid.
/// Tangential segments are deterministic (radius sqrt(start^2 + t)) and
/// evaluate through the closed-form ring integral, so their spread is zero.
CostEstimate cost_estimate(const Strategy& strategy, const RadialCost& f, double start_radius,
                           double stop_radius, const Seed& seed, int n,
                           const CostSimOptions& options = {});

/// Cost additivity of the tangential strategy at the origin: the cost from
/// the origin to R must equal the ring cost to eta plus the cost from
/// radius eta to R. Requires f nonincreasing on (0, eta).
TestReport dpp_origin_check(const RadialCost& f, double eta, double R, const Seed& seed, int n);

/// Costs of the lambda strategies from the origin to eta for each lambda,
/// next to the closed-form tangential limit and the absolute gap.
struct LambdaLimitRow {
    double lambda = 0.0;
    CostEstimate cost;
    double limit = 0.0;
    double gap = 0.0;
};
std::vector<LambdaLimitRow> lambda_limit_experiment(const RadialCost& f, double eta,
                                                    std::span<const double> lambdas,
                                                    const Seed& seed, int n);

/// Row-major 2x2 matrix.
struct Mat2 {
    double m[2][2];
};

/// Rank-one diffusion factor sigma(x) = (1/|x|) (-x2, x1)^T gamma^T for a
/// unit vector gamma: trace(sigma sigma^T) = 1 and the column space is the
/// tangential direction at x. x = 0 is a domain error; |gamma| must equal
/// 1 to within 1e-12.
Mat2 sigma_factorization(const std::array<double, 2>& x, const std::array<double, 2>& gamma);

}  // namespace weaksde
