#include "weaksde/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "weaksde/path.hpp"  // format_double

namespace weaksde {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double wrap_angle(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;  // fmod rounding can land exactly on 2*pi
    return r;
}

TorusSample TorusSample::wrap(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("TorusSample: need at least one value");
    std::vector<double> wrapped(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) wrapped[i] = wrap_angle(values[i]);
    return TorusSample(std::move(wrapped));
}

std::string TestReport::csv_header() { return "name,n,statistic,threshold,pass"; }

std::string TestReport::csv_row() const {
    std::ostringstream os;
    os << name << ',' << n << ',' << format_double(statistic) << ',' << format_double(threshold)
       << ',' << (pass ? 1 : 0);
    return os.str();
}

const std::string* TestReport::detail(std::string_view key) const {
    for (const auto& [k, v] : details)
        if (k == key) return &v;
    return nullptr;
}

std::complex<double> torus_ecf(int k, const TorusSample& sample) {
    if (k == 0) return {1.0, 0.0};
    double re = 0.0, im = 0.0;
    for (double x : sample.values()) {
        re += std::cos(k * x);
        im += std::sin(k * x);
    }
    const double n = static_cast<double>(sample.size());
    return {re / n, im / n};
}

double kuiper_statistic(const TorusSample& sample) {
    std::vector<double> u(sample.values().begin(), sample.values().end());
    for (double& x : u) x /= kTwoPi;
    std::sort(u.begin(), u.end());
    const std::size_t n = u.size();
    double dplus = 0.0, dminus = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ecdf_hi = static_cast<double>(i + 1) / n;
        const double ecdf_lo = static_cast<double>(i) / n;
        dplus = std::max(dplus, ecdf_hi - u[i]);
        dminus = std::max(dminus, u[i] - ecdf_lo);
    }
    return dplus + dminus;
}

double kuiper_pvalue(double v, std::size_t n) {
    // Stephens (1970): lambda = (sqrt(n) + 0.155 + 0.24/sqrt(n)) * V,
    // P(V > v) = 2 sum_{j>=1} (4 j^2 lambda^2 - 1) exp(-2 j^2 lambda^2).
    const double sq = std::sqrt(static_cast<double>(n));
    const double lam = (sq + 0.155 + 0.24 / sq) * v;
    if (lam < 0.4) return 1.0;  // tail series needs lambda away from 0
    double p = 0.0;
    for (int j = 1; j <= 200; ++j) {
        const double a = 2.0 * j * j * lam * lam;
        const double term = 2.0 * (2.0 * a - 1.0) * std::exp(-a);
        p += term;
        if (std::abs(term) < 1e-14 * (1.0 + std::abs(p))) break;
    }
    return std::clamp(p, 0.0, 1.0);
}

double kuiper_critical_value(std::size_t n, double significance) {
    if (!(significance > 0.0) || !(significance < 1.0))
        throw std::invalid_argument("kuiper_critical_value: significance must be in (0,1)");
    double lo = 0.0, hi = 4.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (kuiper_pvalue(mid, n) > significance)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

TestReport kuiper_test(const TorusSample& sample, double significance, std::string_view name) {
    if (sample.size() < 8) throw std::invalid_argument("kuiper_test: need n >= 8");
    TestReport report;
    report.name = std::string(name);
    report.n = static_cast<long long>(sample.size());
    report.statistic = kuiper_statistic(sample);
    report.threshold = kuiper_critical_value(sample.size(), significance);
    report.pass = report.statistic <= report.threshold;
    report.details.emplace_back("p_value", format_double(kuiper_pvalue(report.statistic, sample.size())));
    report.details.emplace_back("significance", format_double(significance));
    return report;
}

TestReport ecf_independence(const TorusSample& a, const TorusSample& b, int k, int m,
                            std::string_view name) {
    if (a.size() != b.size())
        throw std::invalid_argument("ecf_independence: samples must be paired (equal length)");
    const std::size_t n = a.size();
    std::complex<double> joint(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double phase = k * a.values()[i] + m * b.values()[i];
        joint += std::complex<double>(std::cos(phase), std::sin(phase));
    }
    joint /= static_cast<double>(n);
    const std::complex<double> ga = torus_ecf(k, a);
    const std::complex<double> gb = torus_ecf(m, b);

    TestReport report;
    report.name = std::string(name);
    report.n = static_cast<long long>(n);
    report.statistic = std::abs(joint - ga * gb);
    report.threshold = 3.0 / std::sqrt(static_cast<double>(n));
    report.pass = report.statistic <= report.threshold;
    report.details.emplace_back("k", std::to_string(k));
    report.details.emplace_back("m", std::to_string(m));
    return report;
}

TestReport dyadic_decay(const std::vector<std::vector<double>>& shell_increments, int k,
                        std::string_view name) {
    const std::size_t n = shell_increments.size();
    if (n == 0) throw std::invalid_argument("dyadic_decay: empty sample");
    const std::size_t levels = shell_increments.front().size();
    if (levels < 2) throw std::invalid_argument("dyadic_decay: need at least 2 shells");
    for (const auto& row : shell_increments)
        if (row.size() != levels)
            throw std::invalid_argument("dyadic_decay: ragged shell matrix");
    if (k == 0) throw std::invalid_argument("dyadic_decay: k must be nonzero");

    // Per-shell ECF magnitudes and partial-sum ECF magnitudes.
    std::vector<double> shell_mag(levels), partial_mag(levels);
    for (std::size_t j = 0; j < levels; ++j) {
        std::complex<double> shell(0.0, 0.0), partial(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double sum = 0.0;
            for (std::size_t l = 0; l <= j; ++l) sum += shell_increments[i][l];
            shell += std::complex<double>(std::cos(k * shell_increments[i][j]),
                                          std::sin(k * shell_increments[i][j]));
            partial += std::complex<double>(std::cos(k * sum), std::sin(k * sum));
        }
        shell_mag[j] = std::abs(shell) / static_cast<double>(n);
        partial_mag[j] = std::abs(partial) / static_cast<double>(n);
    }

    double mean_log_single = 0.0;
    for (double m : shell_mag) mean_log_single += std::log(std::max(m, 1e-300));
    mean_log_single /= static_cast<double>(levels);

    TestReport report;
    report.name = std::string(name);
    report.n = static_cast<long long>(n);
    report.threshold = 0.20;
    report.details.emplace_back("k", std::to_string(k));
    report.details.emplace_back("levels", std::to_string(levels));
    report.details.emplace_back("single_shell_magnitude", format_double(std::exp(mean_log_single)));
    for (std::size_t j = 0; j < levels; ++j)
        report.details.emplace_back("partial_magnitude_" + std::to_string(j + 1),
                                    format_double(partial_mag[j]));

    const double noise_floor = 5.0 / std::sqrt(static_cast<double>(n));

    // No measurable contraction: |ECF| per shell is indistinguishable from 1.
    if (std::exp(mean_log_single) > 1.0 - noise_floor) {
        report.statistic = 0.0;
        report.pass = true;
        report.details.emplace_back("regime", "degenerate-no-decay");
        return report;
    }

    // Restrict the fit to levels whose magnitude is above the noise floor.
    std::vector<double> xs, ys;
    for (std::size_t j = 0; j < levels; ++j) {
        if (partial_mag[j] > noise_floor) {
            xs.push_back(static_cast<double>(j + 1));
            ys.push_back(std::log(partial_mag[j]));
        }
    }
    if (xs.size() < 2) {
        // Everything at the noise floor: both sides of the product law are ~0.
        report.statistic = 0.0;
        report.pass = true;
        report.details.emplace_back("regime", "noise-floor");
        return report;
    }

    // Least-squares slope of log|partial ECF| against the level index.
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;

    report.statistic = std::abs(slope - mean_log_single) / std::abs(mean_log_single);
    report.pass = report.statistic <= report.threshold;
    report.details.emplace_back("regime", "decay");
    report.details.emplace_back("slope", format_double(slope));
    report.details.emplace_back("fit_levels", std::to_string(xs.size()));
    return report;
}

MeanStderr mean_stderr(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) throw std::invalid_argument("mean_stderr: empty sample");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    if (n == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double var = ss / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

double sample_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("sample_correlation: need paired samples, n >= 2");
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

}  // namespace weaksde
