#include <doctest.h>

#include <cmath>
#include <sstream>

#include "weaksde/brownian.hpp"
#include "weaksde/calculus.hpp"
#include "weaksde/path.hpp"
#include "weaksde/rng.hpp"
#include "weaksde/stats.hpp"
#include "weaksde/time_grid.hpp"

using namespace weaksde;

TEST_SUITE_BEGIN("core");

TEST_CASE("grid: uniform spacing and exact endpoints") {
    const TimeGrid grid = make_grid(GridKind::uniform, 0.0, 1.0, 3);
    REQUIRE(grid.size() == 3);
    CHECK(grid[0] == 0.0);
    CHECK(grid[1] == doctest::Approx(0.5));
    CHECK(grid[2] == 1.0);
}

TEST_CASE("grid: log spacing matches a(t) = e^t sampling") {
    const double e = std::exp(1.0);
    const TimeGrid grid = make_grid(GridKind::logspaced, 1.0, e * e, 3);
    CHECK(grid[0] == 1.0);
    CHECK(grid[1] == doctest::Approx(e).epsilon(1e-14));
    CHECK(grid[2] == e * e);
    // Constant ratio between consecutive points.
    CHECK(grid[1] / grid[0] == doctest::Approx(grid[2] / grid[1]).epsilon(1e-12));
}

TEST_CASE("grid: invalid arguments") {
    CHECK_THROWS_AS(make_grid(GridKind::logspaced, 0.0, 1.0, 4), std::domain_error);
    CHECK_THROWS_AS(make_grid(GridKind::uniform, 0.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(GridKind::uniform, 1.0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid::from_times({1.0, 1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("rng: identical seeds reproduce bit for bit") {
    Rng a(Seed{123, 7});
    Rng b(Seed{123, 7});
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
        CHECK(a.normal() == b.normal());
    }
}

TEST_CASE("rng: distinct streams decorrelated") {
    const int n = 10000;
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
        Rng ra(Seed{99, static_cast<std::uint64_t>(2 * i)});
        Rng rb(Seed{99, static_cast<std::uint64_t>(2 * i + 1)});
        a[static_cast<std::size_t>(i)] = ra.normal();
        b[static_cast<std::size_t>(i)] = rb.normal();
    }
    CHECK(std::abs(sample_correlation(a, b)) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("brownian: unit-variance increments, empirical variance oracle") {
    const TimeGrid grid = make_grid(GridKind::uniform, 0.0, 1.0, 2);
    const int n = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const Path path = sample_brownian(Seed{42, static_cast<std::uint64_t>(i)}, grid);
        CHECK(path[0] == 0.0);
        sum += path[1];
        sum_sq += path[1] * path[1];
    }
    const double var = (sum_sq - sum * sum / n) / (n - 1);
    CHECK(var > 0.98);
    CHECK(var < 1.02);
}

TEST_CASE("brownian: fixed seed twice gives the identical path") {
    const TimeGrid grid = make_grid(GridKind::uniform, 0.0, 1.0, 64);
    const Path a = sample_brownian(Seed{5, 3}, grid);
    const Path b = sample_brownian(Seed{5, 3}, grid);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("brownian: endpoint correlation across streams within 3/sqrt(n)") {
    const TimeGrid grid = make_grid(GridKind::uniform, 0.0, 1.0, 16);
    const int n = 10000;
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
        a[static_cast<std::size_t>(i)] =
            sample_brownian(Seed{7, static_cast<std::uint64_t>(2 * i)}, grid).back();
        b[static_cast<std::size_t>(i)] =
            sample_brownian(Seed{7, static_cast<std::uint64_t>(2 * i + 1)}, grid).back();
    }
    CHECK(std::abs(sample_correlation(a, b)) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("brownian: increment ECF matches the Gaussian characteristic function") {
    const double dt = 0.5;
    const TimeGrid grid = make_grid(GridKind::uniform, 0.0, dt, 2);
    const int n = 100000;
    std::vector<double> increments(n);
    for (int i = 0; i < n; ++i)
        increments[static_cast<std::size_t>(i)] =
            sample_brownian(Seed{11, static_cast<std::uint64_t>(i)}, grid).back();
    const TorusSample sample = TorusSample::wrap(increments);
    for (int k = 1; k <= 3; ++k) {
        const double expected = std::exp(-0.5 * k * k * dt);
        CHECK(std::abs(std::abs(torus_ecf(k, sample)) - expected) <
              3.0 / std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("ito_sum: trivial integrands") {
    const TimeGrid grid = make_grid(GridKind::uniform, 0.0, 1.0, 32);
    const Path driver = sample_brownian(Seed{1, 0}, grid);
    const Path ones(grid, std::vector<double>(grid.size(), 1.0));
    const Path zeros(grid, std::vector<double>(grid.size(), 0.0));

    const Path identity = ito_sum(ones, driver);
    for (std::size_t i = 0; i < identity.size(); ++i)
        CHECK(identity[i] == doctest::Approx(driver[i] - driver[0]).epsilon(1e-12));

    const Path zero = ito_sum(zeros, driver);
    for (std::size_t i = 0; i < zero.size(); ++i) CHECK(zero[i] == 0.0);
}

TEST_CASE("ito_sum: mismatched grids rejected") {
    const TimeGrid a = make_grid(GridKind::uniform, 0.0, 1.0, 8);
    const TimeGrid b = make_grid(GridKind::uniform, 0.0, 1.0, 9);
    const Path pa(a, std::vector<double>(a.size(), 1.0));
    const Path pb(b, std::vector<double>(b.size(), 1.0));
    CHECK_THROWS_AS(ito_sum(pa, pb), std::invalid_argument);
}

TEST_CASE("ito_sum: int B dB converges to (B_T^2 - T)/2 as the grid refines") {
    // Independent oracle: the closed form from the stochastic calculus
    // identity; the grid-level error must shrink with refinement.
    auto rms_error = [](int steps, std::uint64_t stream0) {
        const TimeGrid grid = make_grid(GridKind::uniform, 0.0, 1.0, steps + 1);
        double sum_sq = 0.0;
        const int reps = 200;
        for (int i = 0; i < reps; ++i) {
            const Path b = sample_brownian(Seed{77, stream0 + static_cast<std::uint64_t>(i)}, grid);
            const Path integral = ito_sum(b, b);
            const double oracle = 0.5 * (b.back() * b.back() - 1.0);
            sum_sq += (integral.back() - oracle) * (integral.back() - oracle);
        }
        return std::sqrt(sum_sq / reps);
    };
    const double coarse = rms_error(256, 0);
    const double fine = rms_error(4096, 1000);
    CHECK(fine < coarse);
    CHECK(fine < 0.05);
}

TEST_CASE("quadratic_variation: constant and linear paths") {
    const TimeGrid grid = make_grid(GridKind::uniform, 0.0, 1.0, 101);
    const Path constant(grid, std::vector<double>(grid.size(), 3.0));
    CHECK(quadratic_variation(constant).back() == 0.0);

    std::vector<double> linear(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) linear[i] = grid[i];
    const double qv_coarse = quadratic_variation(Path(grid, linear)).back();

    const TimeGrid fine_grid = make_grid(GridKind::uniform, 0.0, 1.0, 401);
    std::vector<double> linear_fine(fine_grid.size());
    for (std::size_t i = 0; i < fine_grid.size(); ++i) linear_fine[i] = fine_grid[i];
    const double qv_fine = quadratic_variation(Path(fine_grid, linear_fine)).back();
    CHECK(qv_fine < qv_coarse);  // finite variation: QV -> 0 under refinement
}

TEST_CASE("quadratic_variation: Brownian QV concentrates at T") {
    const TimeGrid grid = make_grid(GridKind::uniform, 0.0, 1.0, 10001);
    double mean = 0.0;
    const int reps = 100;
    for (int i = 0; i < reps; ++i)
        mean += quadratic_variation(sample_brownian(Seed{13, static_cast<std::uint64_t>(i)}, grid))
                    .back();
    mean /= reps;
    CHECK(mean > 0.95);
    CHECK(mean < 1.05);
}

TEST_CASE("csv: header and full-precision round trip") {
    const TimeGrid grid = make_grid(GridKind::uniform, 0.0, 1.0, 3);
    PlanarPath path{grid, {0.1234567890123456, 0.2, 0.3}, {1.0 / 3.0, 0.5, 0.6}};
    std::ostringstream os;
    write_csv(os, path);
    CHECK(os.str().rfind("t,v1,v2\n", 0) == 0);

    std::istringstream is(os.str());
    const PlanarPath parsed = read_planar_csv(is);
    REQUIRE(parsed.size() == path.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
        CHECK(parsed.x1[i] == path.x1[i]);
        CHECK(parsed.x2[i] == path.x2[i]);
    }
}

TEST_SUITE_END();
