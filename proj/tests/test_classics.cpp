#include <doctest.h>

#include <cmath>
#include <numbers>

#include "weaksde/calculus.hpp"
#include "weaksde/stats.hpp"
#include "weaksde/tanaka.hpp"
#include "weaksde/tsirelson.hpp"

using namespace weaksde;

TEST_SUITE_BEGIN("classics");

TEST_CASE("fractional_part_update: arithmetic cases") {
    CHECK(fractional_part_update(0.75, 0.5) == doctest::Approx(0.5));
    CHECK(fractional_part_update(-0.25, 1.0) == doctest::Approx(0.75));
    CHECK(fractional_part_update(2.0, 1.0) == 0.0);
    CHECK_THROWS_AS(fractional_part_update(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(fractional_part_update(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("tanaka: needs a uniform grid from zero") {
    CHECK_THROWS_AS(simulate_tanaka(Seed{1, 0}, TimeGrid::uniform(0.5, 1.0, 16)),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_tanaka(Seed{1, 0}, TimeGrid::logspaced(0.5, 1.0, 16)),
                    std::invalid_argument);
}

TEST_CASE("tanaka: grid-level quadratic variations coincide exactly") {
    const TimeGrid grid = TimeGrid::uniform(0.0, 1.0, 501);
    const TanakaPaths paths = simulate_tanaka(Seed{2, 0}, grid);
    const Path qv_x = quadratic_variation(paths.x);
    const Path qv_w = quadratic_variation(paths.w);
    for (std::size_t i = 0; i < qv_x.size(); ++i)
        CHECK(qv_x[i] == doctest::Approx(qv_w[i]).epsilon(1e-15));
}

TEST_CASE("tanaka: mirrored solution recovers the same driver increments off zero") {
    const TimeGrid grid = TimeGrid::uniform(0.0, 1.0, 501);
    for (int rep = 0; rep < 50; ++rep) {
        const TanakaPaths paths =
            simulate_tanaka(Seed{3, static_cast<std::uint64_t>(rep)}, grid);
        for (std::size_t i = 1; i + 1 < paths.x.size(); ++i) {
            if (paths.x[i] == 0.0) continue;  // the sign convention point
            const double dw = tanaka_driver_increment(paths.x[i], paths.x[i + 1]);
            const double dw_m = tanaka_driver_increment(-paths.x[i], -paths.x[i + 1]);
            CHECK(dw == dw_m);
        }
        // At the start the solution sits at zero and the convention breaks
        // the symmetry: the mirrored first increment flips sign.
        const double first = tanaka_driver_increment(paths.x[0], paths.x[1]);
        const double first_m = tanaka_driver_increment(-paths.x[0], -paths.x[1]);
        CHECK(first == -first_m);
    }
}

TEST_CASE("tanaka: recovered driver passes Brownian checks") {
    const TimeGrid grid = TimeGrid::uniform(0.0, 1.0, 2);
    const int n = 50000;
    std::vector<double> increments(n);
    for (int rep = 0; rep < n; ++rep) {
        // Single-step path: W_1 = sign(0) * X_1 = X_1 in law.
        const TanakaPaths paths =
            simulate_tanaka(Seed{4, static_cast<std::uint64_t>(rep)}, grid);
        increments[static_cast<std::size_t>(rep)] = paths.w.back();
    }
    const TorusSample sample = TorusSample::wrap(increments);
    for (int k = 1; k <= 3; ++k) {
        const double expected = std::exp(-0.5 * k * k);
        CHECK(std::abs(std::abs(torus_ecf(k, sample)) - expected) <
              3.0 / std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("tanaka: terminal sign balanced and decorrelated from the driver") {
    const TimeGrid grid = TimeGrid::uniform(0.0, 1.0, 101);
    const int n = 10000;
    std::vector<double> signs(n), endpoints(n);
    long long positive = 0;
    for (int rep = 0; rep < n; ++rep) {
        const TanakaPaths paths =
            simulate_tanaka(Seed{5, static_cast<std::uint64_t>(rep)}, grid);
        const double s = paths.x.back() >= 0.0 ? 1.0 : -1.0;
        signs[static_cast<std::size_t>(rep)] = s;
        endpoints[static_cast<std::size_t>(rep)] = paths.w.back();
        positive += s > 0.0 ? 1 : 0;
    }
    CHECK(std::abs(sample_correlation(signs, endpoints)) <
          3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(static_cast<double>(positive) / n - 0.5) <
          1.5 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("tsirelson: config validation") {
    TsirelsonConfig config;
    config.depth = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.depth = 3;
    config.substeps = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.substeps = 1;
    config.custom_times = {0.5, 0.9};
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);  // must end at 1
    config.custom_times = {0.25, 0.5, 1.0};
    CHECK_NOTHROW(config.validate());
}

TEST_CASE("tsirelson: dyadic default boundaries") {
    TsirelsonConfig config;
    config.depth = 3;
    const auto times = config.interval_times();
    REQUIRE(times.size() == 4);
    CHECK(times[0] == doctest::Approx(0.125));
    CHECK(times[3] == 1.0);
}

TEST_CASE("tsirelson: drift level uniform at every late boundary") {
    TsirelsonConfig config;
    config.depth = 7;
    config.substeps = 4;
    const int n = 4000;
    std::vector<std::vector<double>> levels(4, std::vector<double>(n));
    for (int rep = 0; rep < n; ++rep) {
        const TsirelsonPath path =
            simulate_tsirelson(Seed{6, static_cast<std::uint64_t>(rep)}, config);
        for (int k = -3; k <= 0; ++k)
            levels[static_cast<std::size_t>(k + 3)][static_cast<std::size_t>(rep)] =
                path.drift_at_boundary(k) * 2.0 * std::numbers::pi;
    }
    for (const auto& level : levels)
        CHECK(kuiper_test(TorusSample::wrap(level), 0.01).pass);
}

TEST_CASE("tsirelson: drift independent of the driver increments") {
    TsirelsonConfig config;
    config.depth = 6;
    config.substeps = 8;
    const int n = 10000;
    std::vector<double> drift(n), last_increment(n), total(n);
    for (int rep = 0; rep < n; ++rep) {
        const TsirelsonPath path =
            simulate_tsirelson(Seed{7, static_cast<std::uint64_t>(rep)}, config);
        drift[static_cast<std::size_t>(rep)] =
            path.drift_at_boundary(0) * 2.0 * std::numbers::pi;
        const std::size_t last_boundary =
            (path.b.size() - 1) * static_cast<std::size_t>(config.substeps);
        last_increment[static_cast<std::size_t>(rep)] = path.w.back() - path.w[last_boundary];
        total[static_cast<std::size_t>(rep)] = path.w.back();
    }
    CHECK(ecf_independence(TorusSample::wrap(drift), TorusSample::wrap(last_increment), 1, 1)
              .pass);
    CHECK(ecf_independence(TorusSample::wrap(drift), TorusSample::wrap(total), 1, 1).pass);
}

TEST_CASE("tsirelson: forward replay reproduces the path bitwise") {
    TsirelsonConfig config;
    config.depth = 6;
    config.substeps = 8;
    for (int rep = 0; rep < 20; ++rep) {
        const TsirelsonPath path =
            simulate_tsirelson(Seed{8, static_cast<std::uint64_t>(rep)}, config);
        for (std::size_t j0 : {std::size_t{0}, path.b.size() / 2, path.b.size() - 1}) {
            const std::size_t base = j0 * static_cast<std::size_t>(config.substeps);
            const auto replay = tsirelson_reconstruct(path, j0, path.b[j0], path.x[base]);
            REQUIRE(replay.size() == path.x.size() - base);
            for (std::size_t i = 0; i < replay.size(); ++i)
                CHECK(replay[i] == path.x[base + i]);
        }
    }
}

TEST_CASE("tsirelson: drift recursion matches the fractional-part identity") {
    TsirelsonConfig config;
    config.depth = 5;
    config.substeps = 4;
    const TsirelsonPath path = simulate_tsirelson(Seed{9, 0}, config);
    for (std::size_t j = 0; j + 1 < path.b.size(); ++j) {
        const std::size_t base = j * static_cast<std::size_t>(config.substeps);
        const double dx =
            path.x[base + static_cast<std::size_t>(config.substeps)] - path.x[base];
        const double dt = path.interval_times[j + 1] - path.interval_times[j];
        CHECK(path.b[j + 1] == fractional_part_update(dx, dt));
    }
}

TEST_SUITE_END();
