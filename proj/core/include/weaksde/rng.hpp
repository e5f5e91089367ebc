#pragma once

#include <cstdint>
#include <random>

namespace weaksde {

/// Identifies one reproducible random stream. Monte Carlo replicas share a
/// master seed and differ only in the stream index, so any subset of
/// replicas can be regenerated independently and aggregation order does
/// not matter.
struct Seed {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;

    [[nodiscard]] Seed with_stream(std::uint64_t s) const { return Seed{master, s}; }
};

/// Deterministic random source for one stream. The (master, stream) pair
/// is mixed through SplitMix64 before seeding the engine, so adjacent
/// stream indices give decorrelated sequences.
class Rng {
public:
    explicit Rng(Seed seed);

    /// Uniform on [0, 1) with 53 random mantissa bits.
    double uniform01();
    double uniform(double a, double b);

    /// Standard normal draw.
    double normal();
    double normal(double mean, double sd);

    /// Gamma(shape, scale) draw, shape > 0.
    double gamma(double shape, double scale);

    std::int64_t poisson(double mean);

    std::uint64_t next_u64();

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

}  // namespace weaksde
