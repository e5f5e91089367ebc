#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "weaksde/calculus.hpp"
#include "weaksde/stats.hpp"
#include "weaksde/tangential.hpp"

using namespace weaksde;

namespace {

constexpr double kPi = std::numbers::pi;

double ulp_at(double scale) {
    return std::nextafter(std::abs(scale), std::numeric_limits<double>::infinity()) -
           std::abs(scale);
}

}  // namespace

TEST_SUITE_BEGIN("tangential");

TEST_CASE("radius equals sqrt(t) at machine precision on every grid point") {
    const TimeGrid grid = TimeGrid::logspaced(1e-3, 10.0, 501);
    for (int rep = 0; rep < 50; ++rep) {
        const PolarPath path = simulate_tangential(Seed{1, static_cast<std::uint64_t>(rep)}, grid);
        for (std::size_t i = 0; i < path.size(); ++i) {
            const auto planar = path.planar(i);
            const double radius = std::hypot(planar[0], planar[1]);
            const double expected = std::sqrt(grid[i]);
            CHECK(std::abs(radius - expected) <= 4.0 * ulp_at(expected));
        }
    }
}

TEST_CASE("grid starting at a nonpositive time is rejected") {
    const TimeGrid from_zero = TimeGrid::uniform(0.0, 1.0, 16);
    CHECK_THROWS_AS(simulate_tangential(Seed{1, 0}, from_zero), std::domain_error);
}

TEST_CASE("lifted increment variance over [1, e] is 1") {
    // Var d theta = log(t1/t0); Monte Carlo oracle at 1e5 replicas.
    const TimeGrid grid = TimeGrid::logspaced(1.0, std::exp(1.0), 2);
    const int n = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int rep = 0; rep < n; ++rep) {
        const PolarPath path =
            simulate_tangential(Seed{2, static_cast<std::uint64_t>(rep)}, grid, 0.0);
        const double inc = path.lifted[1] - path.lifted[0];
        sum += inc;
        sum_sq += inc * inc;
    }
    const double var = (sum_sq - sum * sum / n) / (n - 1);
    CHECK(var > 0.98);
    CHECK(var < 1.02);
}

TEST_CASE("per-step driver/angle correlation is strictly below 1") {
    const TimeGrid grid = TimeGrid::logspaced(0.5, 8.0, 33);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double variance = std::log(grid[i + 1] / grid[i]);
        const double covariance = 2.0 * (std::sqrt(grid[i + 1]) - std::sqrt(grid[i]));
        const double correlation = covariance / std::sqrt(grid.dt(i) * variance);
        CHECK(correlation < 1.0);
        CHECK(correlation > 0.0);
    }
}

TEST_CASE("planar path is a martingale: binned conditional increments vanish") {
    const TimeGrid grid = TimeGrid::logspaced(1.0, 4.0, 2);
    const int n = 100000;
    const int bins = 8;
    std::array<double, 8> sum1{}, sum2{};
    std::array<double, 8> sumsq1{}, sumsq2{};
    std::array<int, 8> count{};
    for (int rep = 0; rep < n; ++rep) {
        const PolarPath path = simulate_tangential(Seed{3, static_cast<std::uint64_t>(rep)}, grid);
        const auto from = path.planar(0);
        const auto to = path.planar(1);
        const int bin = static_cast<int>(path.angle[0] / (2.0 * kPi) * bins) % bins;
        const double d1 = to[0] - from[0];
        const double d2 = to[1] - from[1];
        sum1[static_cast<std::size_t>(bin)] += d1;
        sum2[static_cast<std::size_t>(bin)] += d2;
        sumsq1[static_cast<std::size_t>(bin)] += d1 * d1;
        sumsq2[static_cast<std::size_t>(bin)] += d2 * d2;
        ++count[static_cast<std::size_t>(bin)];
    }
    for (int b = 0; b < bins; ++b) {
        const auto idx = static_cast<std::size_t>(b);
        REQUIRE(count[idx] > 100);
        const double m = static_cast<double>(count[idx]);
        const double mean1 = sum1[idx] / m;
        const double mean2 = sum2[idx] / m;
        const double se1 = std::sqrt((sumsq1[idx] / m - mean1 * mean1) / m);
        const double se2 = std::sqrt((sumsq2[idx] / m - mean2 * mean2) / m);
        CHECK(std::abs(mean1) < 3.0 * se1);
        CHECK(std::abs(mean2) < 3.0 * se2);
    }
}

TEST_CASE("planar quadratic variation trace concentrates at t - t0 under refinement") {
    // The grid QV of a martingale is unbiased for the bracket at every
    // resolution; refinement shrinks its per-path spread around t1 - t0.
    const double t0 = 0.5, t1 = 4.0;
    auto qv_rms_deviation = [&](int steps) {
        const TimeGrid grid = TimeGrid::logspaced(t0, t1, steps + 1);
        double sum_sq = 0.0;
        const int reps = 200;
        for (int rep = 0; rep < reps; ++rep) {
            const PolarPath path =
                simulate_tangential(Seed{4, static_cast<std::uint64_t>(rep)}, grid);
            std::vector<double> x1(path.size()), x2(path.size());
            for (std::size_t i = 0; i < path.size(); ++i) {
                const auto planar = path.planar(i);
                x1[i] = planar[0];
                x2[i] = planar[1];
            }
            const double trace = quadratic_variation(Path(grid, x1)).back() +
                                 quadratic_variation(Path(grid, x2)).back();
            sum_sq += (trace - (t1 - t0)) * (trace - (t1 - t0));
        }
        return std::sqrt(sum_sq / reps);
    };
    const double coarse = qv_rms_deviation(64);
    const double fine = qv_rms_deviation(1024);
    CHECK(fine < coarse);
    CHECK(fine < 0.1 * (t1 - t0));
}

TEST_CASE("circular_bm: uniform marginal at every grid time") {
    const TimeGrid grid = TimeGrid::uniform(-1.0, 1.0, 5);
    const int n = 10000;
    std::vector<std::vector<double>> angles(grid.size(), std::vector<double>(n));
    for (int rep = 0; rep < n; ++rep) {
        const CircularPath path = circular_bm(Seed{5, static_cast<std::uint64_t>(rep)}, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            angles[i][static_cast<std::size_t>(rep)] = path.angle[i];
    }
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(kuiper_test(TorusSample::wrap(angles[i]), 0.01).pass);
}

TEST_CASE("circular_bm: increments over disjoint windows factorize") {
    const TimeGrid grid = TimeGrid::uniform(0.0, 3.0, 4);
    const int n = 10000;
    std::vector<double> inc_a(n), inc_b(n);
    for (int rep = 0; rep < n; ++rep) {
        const CircularPath path = circular_bm(Seed{6, static_cast<std::uint64_t>(rep)}, grid);
        inc_a[static_cast<std::size_t>(rep)] = path.lifted[1] - path.lifted[0];
        inc_b[static_cast<std::size_t>(rep)] = path.lifted[3] - path.lifted[2];
    }
    CHECK(ecf_independence(TorusSample::wrap(inc_a), TorusSample::wrap(inc_b), 1, 1).pass);
}

TEST_CASE("circular_bm time-changed by e^t matches the tangential angle law") {
    // Same increment variances: compare lifted variances over one window.
    const double s0 = 0.0, s1 = 2.0;
    const TimeGrid s_grid = TimeGrid::uniform(s0, s1, 2);
    const TimeGrid t_grid = TimeGrid::logspaced(std::exp(s0), std::exp(s1), 2);
    const int n = 40000;
    double var_cbm = 0.0, var_tan = 0.0;
    for (int rep = 0; rep < n; ++rep) {
        const CircularPath cbm = circular_bm(Seed{7, static_cast<std::uint64_t>(rep)}, s_grid, 0.0);
        const PolarPath tan =
            simulate_tangential(Seed{8, static_cast<std::uint64_t>(rep)}, t_grid, 0.0);
        var_cbm += cbm.lifted[1] * cbm.lifted[1];
        var_tan += tan.lifted[1] * tan.lifted[1];
    }
    var_cbm /= n;
    var_tan /= n;
    CHECK(var_cbm == doctest::Approx(s1 - s0).epsilon(0.05));
    CHECK(var_tan == doctest::Approx(s1 - s0).epsilon(0.05));
}

TEST_CASE("reconstruct_angle: trivial cases") {
    const TimeGrid grid = TimeGrid::logspaced(1.0, 4.0, 9);
    const PolarPath path = simulate_tangential(Seed{9, 0}, grid);
    CHECK(reconstruct_angle(1.25, path, 3, 3) == doctest::Approx(1.25));

    PolarPath frozen = path;
    for (double& b : frozen.driver) b = 0.0;
    CHECK(reconstruct_angle(1.25, frozen, 0, 8) == doctest::Approx(1.25));

    CHECK_THROWS_AS(reconstruct_angle(0.0, path, 5, 3), std::invalid_argument);
}

TEST_CASE("reconstruct_angle: error shrinks under grid refinement") {
    auto rms = [](int steps, std::uint64_t stream0) {
        const TimeGrid grid = TimeGrid::logspaced(0.25, 4.0, steps + 1);
        double sum_sq = 0.0;
        const int reps = 1000;
        for (int rep = 0; rep < reps; ++rep) {
            const PolarPath path = simulate_tangential(
                Seed{10, stream0 + static_cast<std::uint64_t>(rep)}, grid);
            const double rebuilt = reconstruct_angle(path.lifted[0], path, 0, path.size() - 1);
            double gap = wrap_angle(path.lifted.back()) - rebuilt;
            if (gap > kPi) gap -= 2.0 * kPi;
            if (gap < -kPi) gap += 2.0 * kPi;
            sum_sq += gap * gap;
        }
        return std::sqrt(sum_sq / reps);
    };
    const double coarse = rms(128, 0);
    const double fine = rms(512, 100000);
    CHECK(fine / coarse < 1.0);
    CHECK(fine / coarse < 0.9);
}

TEST_CASE("shared_noise_pair: zero offset duplicates the path") {
    const TimeGrid grid = TimeGrid::logspaced(0.5, 2.0, 65);
    const auto [first, second] = shared_noise_pair(Seed{11, 0}, grid, 0.0);
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first.lifted[i] == second.lifted[i]);
        CHECK(first.driver[i] == second.driver[i]);
    }
}

TEST_CASE("shared_noise_pair: offset pi gives antipodal planar paths") {
    const TimeGrid grid = TimeGrid::logspaced(0.5, 8.0, 257);
    const auto [first, second] = shared_noise_pair(Seed{12, 0}, grid, kPi);
    for (std::size_t i = 0; i < first.size(); ++i) {
        const double difference = second.lifted[i] - first.lifted[i];
        CHECK(std::abs(difference - kPi) <=
              4.0 * ulp_at(std::max(std::abs(first.lifted[i]), kPi)));
        const auto a = first.planar(i);
        const auto b = second.planar(i);
        const double scale = std::sqrt(grid[i]);
        CHECK(std::abs(a[0] + b[0]) <= 1e-12 * std::max(1.0, scale));
        CHECK(std::abs(a[1] + b[1]) <= 1e-12 * std::max(1.0, scale));
    }
}

TEST_CASE("shared_noise_pair: offset pi/2 stays exactly constant") {
    const TimeGrid grid = TimeGrid::logspaced(1e-3, 10.0, 1001);
    const auto [first, second] = shared_noise_pair(Seed{13, 0}, grid, kPi / 2.0);
    for (std::size_t i = 0; i < first.size(); ++i) {
        const double difference = second.lifted[i] - first.lifted[i];
        CHECK(std::abs(difference - kPi / 2.0) <=
              4.0 * ulp_at(std::max(std::abs(first.lifted[i]), kPi)));
    }
}

TEST_CASE("angle_marginal_sample: single replica lies on the torus") {
    const AngleMarginal sample = angle_marginal_sample(Seed{14, 0}, 0.7, 1);
    REQUIRE(sample.marginal.size() == 1);
    CHECK(sample.marginal[0] >= 0.0);
    CHECK(sample.marginal[0] < 2.0 * kPi);
}

TEST_CASE("angle_marginal_sample: marginal uniform and independent of increments") {
    const std::pair<double, double> windows[2] = {{-1.0, -0.25}, {0.5, 1.5}};
    const AngleMarginal sample = angle_marginal_sample(Seed{15, 0}, 0.0, 10000, windows);
    CHECK(kuiper_test(TorusSample::wrap(sample.marginal), 0.01).pass);
    for (const auto& increments : sample.increments)
        CHECK(ecf_independence(TorusSample::wrap(sample.marginal),
                               TorusSample::wrap(increments), 1, 1)
                  .pass);
    // Window increment variance equals the log-time gap.
    double sum_sq = 0.0;
    for (double inc : sample.increments[1]) sum_sq += inc * inc;
    CHECK(sum_sq / static_cast<double>(sample.increments[1].size()) ==
          doctest::Approx(1.0).epsilon(0.05));
}

TEST_SUITE_END();
