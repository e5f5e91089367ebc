#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace weaksde {

/// Maps a real angle to its representative in [0, 2*pi).
double wrap_angle(double x);

/// A sample of angles stored wrapped to [0, 2*pi).
class TorusSample {
public:
    /// Wraps arbitrary reals onto the torus.
    static TorusSample wrap(std::span<const double> values);

    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }

private:
    explicit TorusSample(std::vector<double> wrapped) : values_(std::move(wrapped)) {}
    std::vector<double> values_;
};

/// Named verdict of one statistical check. For one-sided checks,
/// pass <=> statistic <= threshold.
struct TestReport {
    std::string name;
    long long n = 0;
    double statistic = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::vector<std::pair<std::string, std::string>> details;

    static std::string csv_header();  // "name,n,statistic,threshold,pass"
    std::string csv_row() const;      // pass serialized as 1/0
    const std::string* detail(std::string_view key) const;
};

/// Empirical characteristic function (1/n) sum exp(i k x_j) on the torus.
/// k = 0 returns exactly 1.
std::complex<double> torus_ecf(int k, const TorusSample& sample);

/// Kuiper V = D+ + D- against the uniform law on [0, 2*pi).
double kuiper_statistic(const TorusSample& sample);

/// Asymptotic upper tail P(V > v) (Stephens' small-sample correction).
double kuiper_pvalue(double v, std::size_t n);

/// Smallest v with kuiper_pvalue(v, n) <= significance.
double kuiper_critical_value(std::size_t n, double significance);

/// Rotation-invariant uniformity test; requires n >= 8.
TestReport kuiper_test(const TorusSample& sample, double significance = 0.01,
                       std::string_view name = "kuiper");

/// |E[e_k(a) e_m(b)] - E[e_k(a)] E[e_m(b)]| over paired samples, threshold
/// 3/sqrt(n).
TestReport ecf_independence(const TorusSample& a, const TorusSample& b, int k, int m,
                            std::string_view name = "ecf-independence");

/// Checks the product law |E e_k(sum of N shell increments)| =
/// |E e_k(one shell)|^N for i.i.d. shells: the log-magnitude of partial-sum
/// ECFs must be linear in the level count, with slope within 20% of the
/// single-shell log-magnitude. `shell_increments` holds one row per replica
/// and one column per shell. Reports an inconclusive (vacuously passing)
/// verdict when there is no resolvable decay.
TestReport dyadic_decay(const std::vector<std::vector<double>>& shell_increments, int k,
                        std::string_view name = "dyadic-decay");

/// Mean and standard error of a sample.
struct MeanStderr {
    double mean = 0.0;
    double std_error = 0.0;
};
MeanStderr mean_stderr(std::span<const double> values);

/// Pearson correlation of paired samples.
double sample_correlation(std::span<const double> a, std::span<const double> b);

}  // namespace weaksde
