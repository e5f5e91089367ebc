#include "weaksde/rng.hpp"

#include <stdexcept>

namespace weaksde {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(Seed seed)
    : engine_(splitmix64(seed.master ^ splitmix64(seed.stream ^ 0x1F123BB5159A55E5ULL))),
      normal_(0.0, 1.0) {}

double Rng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) {
    return a + (b - a) * uniform01();
}

double Rng::normal() {
    return normal_(engine_);
}

double Rng::normal(double mean, double sd) {
    return mean + sd * normal_(engine_);
}

double Rng::gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
        throw std::invalid_argument("Rng::gamma: shape and scale must be positive");
    std::gamma_distribution<double> dist(shape, scale);
    return dist(engine_);
}

std::int64_t Rng::poisson(double mean) {
    if (mean < 0.0) throw std::invalid_argument("Rng::poisson: mean must be nonnegative");
    if (mean == 0.0) return 0;
    std::poisson_distribution<std::int64_t> dist(mean);
    return dist(engine_);
}

std::uint64_t Rng::next_u64() {
    return engine_();
}

}  // namespace weaksde
