#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "weaksde/rng.hpp"
#include "weaksde/stats.hpp"

using namespace weaksde;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Best-Fisher rejection sampler for the von Mises law (test-only oracle
// for the Kuiper power check).
double sample_von_mises(Rng& rng, double kappa) {
    const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
    const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
    const double r = (1.0 + rho * rho) / (2.0 * rho);
    while (true) {
        const double u1 = rng.uniform01();
        const double z = std::cos(std::numbers::pi * u1);
        const double f = (1.0 + r * z) / (r + z);
        const double c = kappa * (r - f);
        const double u2 = rng.uniform01();
        if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
            const double u3 = rng.uniform01();
            const double sign = u3 < 0.5 ? -1.0 : 1.0;
            return wrap_angle(sign * std::acos(f));
        }
    }
}

std::vector<double> uniform_angles(Rng& rng, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (double& x : out) x = rng.uniform(0.0, kTwoPi);
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("stats");

TEST_CASE("torus_ecf: k = 0 returns exactly 1") {
    const TorusSample sample = TorusSample::wrap(std::vector<double>{0.3, 1.2, 5.9});
    CHECK(torus_ecf(0, sample) == std::complex<double>(1.0, 0.0));
}

TEST_CASE("torus_ecf: two antipodal points cancel at k = 1") {
    const TorusSample sample = TorusSample::wrap(std::vector<double>{0.0, std::numbers::pi});
    CHECK(std::abs(torus_ecf(1, sample)) < 1e-15);
}

TEST_CASE("torus_ecf: magnitude never exceeds 1") {
    Rng rng(Seed{2024, 0});
    for (int trial = 0; trial < 20; ++trial) {
        const TorusSample sample = TorusSample::wrap(uniform_angles(rng, 100));
        for (int k = -3; k <= 3; ++k) CHECK(std::abs(torus_ecf(k, sample)) <= 1.0 + 4e-16);
    }
}

TEST_CASE("torus_ecf: CLT oracle under uniformity") {
    // E|ECF|^2 = 1/n under the uniform law; the 3/sqrt(n) band must hold
    // for nearly every seed.
    const int n = 100000;
    int inside = 0;
    const int batches = 100;
    for (int b = 0; b < batches; ++b) {
        Rng rng(Seed{31337, static_cast<std::uint64_t>(b)});
        const TorusSample sample = TorusSample::wrap(uniform_angles(rng, n));
        if (std::abs(torus_ecf(1, sample)) < 3.0 / std::sqrt(static_cast<double>(n))) ++inside;
    }
    CHECK(inside >= 99);
}

TEST_CASE("kuiper: equally spaced points pass with a minimal statistic") {
    std::vector<double> values(100);
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = (static_cast<double>(i) + 0.5) / 100.0 * kTwoPi;
    const TestReport report = kuiper_test(TorusSample::wrap(values), 0.01);
    CHECK(report.pass);
    CHECK(report.statistic <= 0.011);
}

TEST_CASE("kuiper: point mass fails") {
    const std::vector<double> values(100, 0.0);
    const TestReport report = kuiper_test(TorusSample::wrap(values), 0.01);
    CHECK_FALSE(report.pass);
}

TEST_CASE("kuiper: von Mises alternative is rejected at n = 1e4") {
    Rng rng(Seed{5150, 0});
    std::vector<double> values(10000);
    for (double& v : values) v = sample_von_mises(rng, 1.0);
    const TestReport report = kuiper_test(TorusSample::wrap(values), 0.01);
    CHECK_FALSE(report.pass);
}

TEST_CASE("kuiper: statistic is rotation invariant") {
    Rng rng(Seed{88, 0});
    const std::vector<double> base = uniform_angles(rng, 500);
    const double v0 = kuiper_statistic(TorusSample::wrap(base));
    for (double shift : {0.3, 1.7, 4.4}) {
        std::vector<double> rotated(base.size());
        for (std::size_t i = 0; i < base.size(); ++i) rotated[i] = base[i] + shift;
        const double v = kuiper_statistic(TorusSample::wrap(rotated));
        CHECK(v == doctest::Approx(v0).epsilon(1e-9));
    }
}

TEST_CASE("kuiper: n < 8 is an argument error") {
    const std::vector<double> values(5, 1.0);
    CHECK_THROWS_AS(kuiper_test(TorusSample::wrap(values), 0.01), std::invalid_argument);
}

TEST_CASE("kuiper: false-positive rate near the significance level") {
    // Under the null the rejection frequency at level 0.01 must stay in
    // [0.002, 0.03] over many seed batches.
    const int batches = 1000;
    const int n = 500;
    int rejected = 0;
    for (int b = 0; b < batches; ++b) {
        Rng rng(Seed{424242, static_cast<std::uint64_t>(b)});
        const TestReport report = kuiper_test(TorusSample::wrap(uniform_angles(rng, n)), 0.01);
        if (!report.pass) ++rejected;
    }
    const double rate = static_cast<double>(rejected) / batches;
    CHECK(rate >= 0.002);
    CHECK(rate <= 0.03);
}

TEST_CASE("ecf_independence: identical samples are detected as dependent") {
    Rng rng(Seed{7, 0});
    const TorusSample a = TorusSample::wrap(uniform_angles(rng, 10000));
    const TestReport report = ecf_independence(a, a, 1, -1);
    CHECK_FALSE(report.pass);
    CHECK(report.statistic > 0.9);
}

TEST_CASE("ecf_independence: independent uniforms pass") {
    Rng rng(Seed{8, 0});
    const TorusSample a = TorusSample::wrap(uniform_angles(rng, 10000));
    const TorusSample b = TorusSample::wrap(uniform_angles(rng, 10000));
    CHECK(ecf_independence(a, b, 1, 1).pass);
}

TEST_CASE("ecf_independence: constant second sample factorizes exactly") {
    Rng rng(Seed{9, 0});
    const TorusSample a = TorusSample::wrap(uniform_angles(rng, 1000));
    const TorusSample b = TorusSample::wrap(std::vector<double>(1000, 1.25));
    const TestReport report = ecf_independence(a, b, 1, 1);
    CHECK(report.pass);
    CHECK(report.statistic < 1e-12);
}

TEST_CASE("ecf_independence: length mismatch rejected") {
    const TorusSample a = TorusSample::wrap(std::vector<double>{0.1, 0.2});
    const TorusSample b = TorusSample::wrap(std::vector<double>{0.1});
    CHECK_THROWS_AS(ecf_independence(a, b, 1, 1), std::invalid_argument);
}

TEST_CASE("dyadic_decay: i.i.d. uniform shells sit at the noise floor") {
    Rng rng(Seed{10, 0});
    const int n = 4000, levels = 4;
    std::vector<std::vector<double>> shells(n, std::vector<double>(levels));
    for (auto& row : shells)
        for (double& v : row) v = rng.uniform(0.0, kTwoPi);
    const TestReport report = dyadic_decay(shells, 1);
    CHECK(report.pass);
    REQUIRE(report.detail("regime") != nullptr);
    CHECK(*report.detail("regime") == "noise-floor");
}

TEST_CASE("dyadic_decay: deterministic zero increments are inconclusive") {
    const std::vector<std::vector<double>> shells(100, std::vector<double>(3, 0.0));
    const TestReport report = dyadic_decay(shells, 1);
    CHECK(report.pass);
    REQUIRE(report.detail("regime") != nullptr);
    CHECK(*report.detail("regime") == "degenerate-no-decay");
}

TEST_CASE("dyadic_decay: wrapped Gaussian shells follow the product law") {
    // Oracle: |E e_1| = exp(-sigma^2/2) per shell, so the slope of the
    // partial-sum log magnitude is exactly that value.
    Rng rng(Seed{11, 0});
    const int n = 10000, levels = 4;
    const double sigma = std::sqrt(0.5);
    std::vector<std::vector<double>> shells(n, std::vector<double>(levels));
    for (auto& row : shells)
        for (double& v : row) v = sigma * rng.normal();
    const TestReport report = dyadic_decay(shells, 1);
    CHECK(report.pass);
    REQUIRE(report.detail("regime") != nullptr);
    CHECK(*report.detail("regime") == "decay");
    REQUIRE(report.detail("single_shell_magnitude") != nullptr);
    const double single = std::stod(*report.detail("single_shell_magnitude"));
    CHECK(single == doctest::Approx(std::exp(-0.25)).epsilon(0.03));
    // Four-level product: e^{-1} against the measured partial magnitude.
    REQUIRE(report.detail("partial_magnitude_4") != nullptr);
    const double partial4 = std::stod(*report.detail("partial_magnitude_4"));
    CHECK(partial4 == doctest::Approx(std::exp(-1.0)).epsilon(0.10));
}

TEST_CASE("mean_stderr: matches the direct formulas") {
    const std::vector<double> values{1.0, 2.0, 3.0, 4.0};
    const MeanStderr ms = mean_stderr(values);
    CHECK(ms.mean == doctest::Approx(2.5));
    // Sample variance 5/3, stderr sqrt(5/12).
    CHECK(ms.std_error == doctest::Approx(std::sqrt(5.0 / 12.0)));
}

TEST_SUITE_END();
