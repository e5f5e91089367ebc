#include "weaksde/control.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "weaksde/lambda.hpp"
#include "weaksde/path.hpp"

namespace weaksde {

// ---------------------------------------------------------------------------
// RadialCost
// ---------------------------------------------------------------------------

RadialCost RadialCost::constant(double c, double domain_radius) {
    if (!(domain_radius > 0.0)) throw std::invalid_argument("RadialCost: domain radius > 0");
    RadialCost f;
    f.family_ = Family::constant;
    f.constant_ = c;
    f.domain_radius_ = domain_radius;
    return f;
}

RadialCost RadialCost::power(double exponent, double domain_radius) {
    if (!(domain_radius > 0.0)) throw std::invalid_argument("RadialCost: domain radius > 0");
    if (!std::isfinite(exponent)) throw std::invalid_argument("RadialCost: exponent must be finite");
    RadialCost f;
    f.family_ = Family::power;
    f.exponent_ = exponent;
    f.domain_radius_ = domain_radius;
    return f;
}

RadialCost RadialCost::tabulated(std::vector<double> radii, std::vector<double> values,
                                 double domain_radius) {
    if (!(domain_radius > 0.0)) throw std::invalid_argument("RadialCost: domain radius > 0");
    if (radii.size() != values.size() || radii.size() < 2)
        throw std::invalid_argument("RadialCost: table needs matching arrays, length >= 2");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw std::invalid_argument("RadialCost: table radii must be > 0");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw std::invalid_argument("RadialCost: table radii must be increasing");
    }
    RadialCost f;
    f.family_ = Family::tabulated;
    f.domain_radius_ = domain_radius;
    f.tab_r_ = std::move(radii);
    f.tab_f_ = std::move(values);
    return f;
}

RadialCost RadialCost::parse(std::string_view text, double domain_radius) {
    auto parse_number = [](std::string_view s) {
        try {
            return std::stod(std::string(s));
        } catch (const std::exception&) {
            throw std::invalid_argument("RadialCost: cannot parse number in '" + std::string(s) +
                                        "'");
        }
    };
    if (text.rfind("power:", 0) == 0)
        return power(parse_number(text.substr(6)), domain_radius);
    if (text.rfind("const:", 0) == 0)
        return constant(parse_number(text.substr(6)), domain_radius);
    return constant(parse_number(text), domain_radius);
}

double RadialCost::operator()(double r) const {
    switch (family_) {
        case Family::constant: return constant_;
        case Family::power: return std::pow(r, exponent_);
        case Family::tabulated: {
            if (r <= tab_r_.front()) return tab_f_.front();
            if (r >= tab_r_.back()) return tab_f_.back();
            const auto it = std::upper_bound(tab_r_.begin(), tab_r_.end(), r);
            const std::size_t hi = static_cast<std::size_t>(it - tab_r_.begin());
            const std::size_t lo = hi - 1;
            const double w = (r - tab_r_[lo]) / (tab_r_[hi] - tab_r_[lo]);
            return tab_f_[lo] + w * (tab_f_[hi] - tab_f_[lo]);
        }
    }
    return 0.0;
}

std::string RadialCost::label() const {
    switch (family_) {
        case Family::constant: return "const:" + format_double(constant_);
        case Family::power: return "power:" + format_double(exponent_);
        case Family::tabulated: return "tabulated";
    }
    return "?";
}

double ring_cost_integral(const RadialCost& f, double a, double b) {
    if (!(a >= 0.0) || !(b >= a)) throw std::invalid_argument("ring_cost_integral: need 0 <= a <= b");
    if (b > f.domain_radius() * (1.0 + 1e-12))
        throw std::invalid_argument("ring_cost_integral: b exceeds the cost domain radius");
    if (a == b) return 0.0;
    if (f.family() == RadialCost::Family::constant) {
        // 2 c int xi dxi = c (b^2 - a^2), exact.
        const double c = f(1.0);
        return c * (b * b - a * a);
    }
    if (f.family() == RadialCost::Family::power && a == 0.0 && f.exponent() <= -2.0)
        throw std::domain_error("ring_cost_integral: integral diverges at the origin");

    // Substituting u = sqrt(xi) softens the origin singularity: the
    // integrand becomes 4 u^3 f(u^2), which for the power family is the
    // single power 4 u^(3+2p) (evaluated as one pow so u^3 cannot
    // underflow against a blowing-up f). The exact endpoint is guarded;
    // tanh_sinh otherwise samples it.
    boost::math::quadrature::tanh_sinh<double> integrator;
    const bool is_power = f.family() == RadialCost::Family::power;
    const double power_exponent = 3.0 + 2.0 * f.exponent();
    const auto integrand = [&](double u) -> double {
        if (u <= 0.0) return 0.0;
        if (is_power) return 4.0 * std::pow(u, power_exponent);
        return 4.0 * u * u * u * f(u * u);
    };
    return integrator.integrate(integrand, std::sqrt(a), std::sqrt(b), 1e-8);
}

double tangential_cost_closed_form(const RadialCost& f, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("tangential_cost_closed_form: eta must be > 0");
    return ring_cost_integral(f, 0.0, eta);
}

// ---------------------------------------------------------------------------
// Strategy
// ---------------------------------------------------------------------------

Strategy Strategy::radial() {
    Strategy s;
    s.kind_ = Kind::radial;
    return s;
}

Strategy Strategy::tangential() {
    Strategy s;
    s.kind_ = Kind::tangential;
    return s;
}

Strategy Strategy::lambda(double lambda) {
    LambdaParams::from_lambda(lambda);  // validates the range
    Strategy s;
    s.kind_ = Kind::lambda;
    s.lambda_ = lambda;
    return s;
}

Strategy Strategy::switch_at_radius(double rho, Strategy inner, Strategy outer) {
    if (!(rho > 0.0)) throw std::invalid_argument("Strategy: switch radius must be positive");
    if (inner.kind_ == Kind::switch_at_radius || outer.kind_ == Kind::switch_at_radius)
        throw std::invalid_argument("Strategy: nested switch strategies are not supported");
    Strategy s;
    s.kind_ = Kind::switch_at_radius;
    s.switch_radius_ = rho;
    s.inner_ = std::make_shared<const Strategy>(std::move(inner));
    s.outer_ = std::make_shared<const Strategy>(std::move(outer));
    return s;
}

Strategy Strategy::parse(std::string_view text) {
    if (text == "radial") return radial();
    if (text == "tangential") return tangential();
    if (text.rfind("lambda:", 0) == 0) {
        try {
            return lambda(std::stod(std::string(text.substr(7))));
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("Strategy: cannot parse lambda value");
        }
    }
    if (text.rfind("switch:", 0) == 0) {
        const std::string rest(text.substr(7));
        const auto c1 = rest.find(':');
        const auto c2 = rest.find(':', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::invalid_argument("Strategy: switch needs switch:<rho>:<inner>:<outer>");
        double rho = 0.0;
        try {
            rho = std::stod(rest.substr(0, c1));
        } catch (const std::exception&) {
            throw std::invalid_argument("Strategy: cannot parse switch radius");
        }
        return switch_at_radius(rho, parse(rest.substr(c1 + 1, c2 - c1 - 1)),
                                parse(rest.substr(c2 + 1)));
    }
    throw std::invalid_argument("Strategy: unknown strategy '" + std::string(text) + "'");
}

const Strategy& Strategy::inner() const {
    if (!inner_) throw std::logic_error("Strategy: no inner strategy");
    return *inner_;
}

const Strategy& Strategy::outer() const {
    if (!outer_) throw std::logic_error("Strategy: no outer strategy");
    return *outer_;
}

std::string Strategy::label() const {
    switch (kind_) {
        case Kind::radial: return "radial";
        case Kind::tangential: return "tangential";
        case Kind::lambda: return "lambda:" + format_double(lambda_);
        case Kind::switch_at_radius:
            return "switch:" + format_double(switch_radius_) + ":" + inner().label() + ":" +
                   outer().label();
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Cost simulation
// ---------------------------------------------------------------------------

namespace {

struct PathFlags {
    bool truncated = false;
    bool overflow = false;
};

/// Clamped cost evaluation near the origin.
double eval_cost(const RadialCost& f, double r, const CostSimOptions& opt, PathFlags& flags) {
    if (r < opt.regularize_radius) {
        flags.truncated = true;
        r = opt.regularize_radius;
    }
    return f(r);
}

/// Probability that a Brownian bridge with volatility `vol` from radius a
/// to radius b (both below the barrier) touched the barrier inside a step
/// of length dt. Sampling it removes the first-passage undershoot bias of
/// discrete monitoring.
bool bridge_crossed(Rng& rng, double a, double b, double barrier, double vol, double dt) {
    const double p = std::exp(-2.0 * (barrier - a) * (barrier - b) / (vol * vol * dt));
    return rng.uniform01() < p;
}

/// Crossing-time estimate within the step, given endpoints a -> b versus
/// the barrier (conditional linear interpolation; for a bridge detected by
/// bridge_crossed the far endpoint is reflected through the barrier).
double crossing_fraction(double a, double b, double barrier) {
    const double da = barrier - a;
    const double db = std::abs(barrier - b);
    if (da <= 0.0) return 0.0;
    return std::clamp(da / (da + db), 0.0, 1.0);
}

/// Radial strategy: |Y| for a 1-D Brownian motion Y from start, stopped at
/// |Y| >= stop, trapezoid cost along the way.
double radial_cost_once(Rng& rng, const RadialCost& f, double start, double stop,
                        const CostSimOptions& opt, PathFlags& flags) {
    const double dt = stop * stop / opt.radial_steps;
    const double sqrt_dt = std::sqrt(dt);
    const double horizon = opt.horizon_multiple * stop * stop;
    double y = start;
    double cost = 0.0;
    double f_here = eval_cost(f, std::abs(y), opt, flags);
    const double f_stop = eval_cost(f, stop, opt, flags);
    for (double t = 0.0; t < horizon;) {
        const double y_next = y + sqrt_dt * rng.normal();
        const double r_here = std::abs(y);
        const double r_next = std::abs(y_next);
        if (r_next >= stop) {
            const double frac = (stop - r_here) / (r_next - r_here);
            cost += 0.5 * (f_here + f_stop) * std::clamp(frac, 0.0, 1.0) * dt;
            return cost;
        }
        if (bridge_crossed(rng, r_here, r_next, stop, 1.0, dt)) {
            cost += 0.5 * (f_here + f_stop) * crossing_fraction(r_here, r_next, stop) * dt;
            return cost;
        }
        const double f_next = eval_cost(f, r_next, opt, flags);
        cost += 0.5 * (f_here + f_next) * dt;
        if (cost > opt.overflow_guard) {
            flags.overflow = true;
            return cost;
        }
        y = y_next;
        f_here = f_next;
        t += dt;
    }
    flags.overflow = true;  // never exited within the horizon
    return cost;
}

/// Lambda strategy: exact squared-radius transitions on geometric time
/// steps, trapezoid cost, stopped at the first radius crossing of stop.
/// Starting at the origin adds the closed-form ring head over [0, t0].
double lambda_cost_once(Rng& rng, double lambda, const RadialCost& f, double start, double stop,
                        const CostSimOptions& opt, PathFlags& flags) {
    const LambdaParams params = LambdaParams::from_lambda(lambda);
    const double lam2 = lambda * lambda;
    const double growth = std::pow(4.0, 1.0 / opt.steps_per_quad);
    const double horizon = opt.horizon_multiple * stop * stop;

    double t = 0.0, z = 0.0, cost = 0.0;
    if (start > 0.0) {
        z = start * start;
    } else {
        // Entrance from the origin; the head [0, t0] is integrated in
        // closed form along the deterministic-radius limit (exact for the
        // tangential limit, flagged as a regularization for lambda > 0).
        t = opt.origin_time_fraction * stop * stop;
        z = besq_step(rng, 0.0, lam2 * t, params.delta);
        cost += ring_cost_integral(f, 0.0, std::sqrt(t));
        flags.truncated = true;
    }
    const double anchor = start > 0.0 ? start * start : 0.0;
    double r = std::sqrt(z);
    if (r >= stop) return cost;
    double f_here = eval_cost(f, r, opt, flags);
    const double f_stop = eval_cost(f, stop, opt, flags);

    while (t < horizon) {
        const double dt = (t + anchor) * (growth - 1.0);
        const double z_next = besq_step(rng, z, lam2 * dt, params.delta);
        const double r_next = std::sqrt(z_next);
        if (r_next >= stop) {
            const double frac = r_next > r ? std::clamp((stop - r) / (r_next - r), 0.0, 1.0) : 1.0;
            cost += 0.5 * (f_here + f_stop) * frac * dt;
            return cost;
        }
        // The radius diffuses with volatility lambda; sample the bridge
        // crossing so the stopping time carries no undershoot bias.
        if (bridge_crossed(rng, r, r_next, stop, lambda, dt)) {
            cost += 0.5 * (f_here + f_stop) * crossing_fraction(r, r_next, stop) * dt;
            return cost;
        }
        const double f_next = eval_cost(f, r_next, opt, flags);
        cost += 0.5 * (f_here + f_next) * dt;
        if (cost > opt.overflow_guard) {
            flags.overflow = true;
            return cost;
        }
        t += dt;
        z = z_next;
        r = r_next;
        f_here = f_next;
    }
    flags.overflow = true;
    return cost;
}

/// Tangential strategy: radius sqrt(start^2 + t) is deterministic, so the
/// running cost to the stop radius is the ring integral itself.
double tangential_cost_once(const RadialCost& f, double start, double stop) {
    return ring_cost_integral(f, start, stop);
}

double leaf_cost_once(Rng& rng, const Strategy& strategy, const RadialCost& f, double start,
                      double stop, const CostSimOptions& opt, PathFlags& flags) {
    switch (strategy.kind()) {
        case Strategy::Kind::tangential: return tangential_cost_once(f, start, stop);
        case Strategy::Kind::radial: return radial_cost_once(rng, f, start, stop, opt, flags);
        case Strategy::Kind::lambda:
            return lambda_cost_once(rng, strategy.lambda_value(), f, start, stop, opt, flags);
        case Strategy::Kind::switch_at_radius: break;
    }
    throw std::logic_error("leaf_cost_once: not a leaf strategy");
}

double strategy_cost_once(Rng& rng, const Strategy& strategy, const RadialCost& f, double start,
                          double stop, const CostSimOptions& opt, PathFlags& flags) {
    if (strategy.kind() != Strategy::Kind::switch_at_radius)
        return leaf_cost_once(rng, strategy, f, start, stop, opt, flags);
    const double rho = strategy.switch_radius();
    if (rho <= start) return leaf_cost_once(rng, strategy.outer(), f, start, stop, opt, flags);
    if (rho >= stop) return leaf_cost_once(rng, strategy.inner(), f, start, stop, opt, flags);
    const double inner = leaf_cost_once(rng, strategy.inner(), f, start, rho, opt, flags);
    const double outer = leaf_cost_once(rng, strategy.outer(), f, rho, stop, opt, flags);
    return inner + outer;
}

bool strategy_is_deterministic(const Strategy& strategy) {
    switch (strategy.kind()) {
        case Strategy::Kind::tangential: return true;
        case Strategy::Kind::switch_at_radius:
            return strategy_is_deterministic(strategy.inner()) &&
                   strategy_is_deterministic(strategy.outer());
        default: return false;
    }
}

}  // namespace

CostEstimate cost_estimate(const Strategy& strategy, const RadialCost& f, double start_radius,
                           double stop_radius, const Seed& seed, int n,
                           const CostSimOptions& options) {
    if (!(start_radius >= 0.0) || !(stop_radius > start_radius))
        throw std::invalid_argument("cost_estimate: need 0 <= start < stop");
    if (stop_radius > f.domain_radius() * (1.0 + 1e-12))
        throw std::invalid_argument("cost_estimate: stop radius exceeds the cost domain");
    if (n < 1) throw std::invalid_argument("cost_estimate: need n >= 1");

    CostEstimate out;
    out.n = n;

    if (strategy_is_deterministic(strategy)) {
        Rng unused(seed);
        PathFlags flags;
        out.mean = strategy_cost_once(unused, strategy, f, start_radius, stop_radius, options,
                                      flags);
        out.std_error = 0.0;
        out.truncated = flags.truncated;
        out.overflow_flag = flags.overflow;
        return out;
    }

    std::vector<double> costs(static_cast<std::size_t>(n));
    PathFlags flags;
    for (int rep = 0; rep < n; ++rep) {
        Rng rng(seed.with_stream(seed.stream + static_cast<std::uint64_t>(rep)));
        costs[static_cast<std::size_t>(rep)] =
            strategy_cost_once(rng, strategy, f, start_radius, stop_radius, options, flags);
    }
    const MeanStderr ms = mean_stderr(costs);
    out.mean = ms.mean;
    out.std_error = ms.std_error;
    out.truncated = flags.truncated;
    out.overflow_flag = flags.overflow;
    return out;
}

TestReport dpp_origin_check(const RadialCost& f, double eta, double R, const Seed& seed, int n) {
    if (!(eta > 0.0) || !(R >= eta)) throw std::invalid_argument("dpp_origin_check: need 0 < eta <= R");
    // The additivity identity is stated for costs nonincreasing near the
    // origin; verify on a coarse probe.
    for (int j = 2; j <= 16; ++j) {
        const double r_lo = eta * (j - 1) / 16.0;
        const double r_hi = eta * j / 16.0;
        if (f(r_hi) > f(r_lo) * (1.0 + 1e-9) + 1e-12)
            throw std::invalid_argument("dpp_origin_check: cost must be nonincreasing on (0, eta)");
    }

    const CostEstimate whole = cost_estimate(Strategy::tangential(), f, 0.0, R, seed, n);
    const double head = ring_cost_integral(f, 0.0, eta);
    CostEstimate tail;  // eta = R leaves nothing past the intermediate radius
    tail.n = n;
    if (eta < R) tail = cost_estimate(Strategy::tangential(), f, eta, R, seed.with_stream(1), n);

    TestReport report;
    report.name = "dpp-origin-additivity";
    report.n = n;
    report.statistic = std::abs(whole.mean - (head + tail.mean));
    const double sigma = std::sqrt(whole.std_error * whole.std_error +
                                   tail.std_error * tail.std_error);
    // Deterministic legs have zero spread; allow for quadrature rounding.
    report.threshold = 3.0 * sigma + 1e-7 * (1.0 + std::abs(whole.mean));
    report.pass = report.statistic <= report.threshold;
    report.details.emplace_back("whole", format_double(whole.mean));
    report.details.emplace_back("head", format_double(head));
    report.details.emplace_back("tail", format_double(tail.mean));
    return report;
}

std::vector<LambdaLimitRow> lambda_limit_experiment(const RadialCost& f, double eta,
                                                    std::span<const double> lambdas,
                                                    const Seed& seed, int n) {
    std::vector<LambdaLimitRow> rows;
    if (lambdas.empty()) return rows;
    const double limit = tangential_cost_closed_form(f, eta);
    std::uint64_t stream_block = 0;
    for (double lambda : lambdas) {
        LambdaLimitRow row;
        row.lambda = lambda;
        row.cost = cost_estimate(Strategy::lambda(lambda), f, 0.0, eta,
                                 seed.with_stream(stream_block), n);
        row.limit = limit;
        row.gap = std::abs(row.cost.mean - limit);
        rows.push_back(row);
        stream_block += static_cast<std::uint64_t>(n) + 1;
    }
    return rows;
}

Mat2 sigma_factorization(const std::array<double, 2>& x, const std::array<double, 2>& gamma) {
    const double norm_x = std::hypot(x[0], x[1]);
    if (!(norm_x > 0.0)) throw std::domain_error("sigma_factorization: x must be nonzero");
    const double norm_g = std::hypot(gamma[0], gamma[1]);
    if (std::abs(norm_g - 1.0) > 1e-12)
        throw std::invalid_argument("sigma_factorization: gamma must be a unit vector");
    const double u0 = -x[1] / norm_x;
    const double u1 = x[0] / norm_x;
    Mat2 sigma;
    sigma.m[0][0] = u0 * gamma[0];
    sigma.m[0][1] = u0 * gamma[1];
    sigma.m[1][0] = u1 * gamma[0];
    sigma.m[1][1] = u1 * gamma[1];
    return sigma;
}

}  // namespace weaksde
