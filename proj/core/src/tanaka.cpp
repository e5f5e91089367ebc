#include "weaksde/tanaka.hpp"

#include <stdexcept>

#include "weaksde/brownian.hpp"

namespace weaksde {

namespace {

// sign(0) := +1; a measure-zero convention, fixed for reproducibility.
double sign_plus(double x) { return x >= 0.0 ? 1.0 : -1.0; }

}  // namespace

double tanaka_driver_increment(double x_here, double x_next) {
    return sign_plus(x_here) * (x_next - x_here);
}

Path tanaka_driver_from_solution(const Path& x) {
    std::vector<double> w(x.size());
    w[0] = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        w[i + 1] = w[i] + tanaka_driver_increment(x[i], x[i + 1]);
    return Path(x.grid(), std::move(w));
}

TanakaPaths simulate_tanaka(const Seed& seed, const TimeGrid& grid) {
    if (grid.kind() != GridKind::uniform || grid.front() != 0.0)
        throw std::invalid_argument("simulate_tanaka: need a uniform grid starting at 0");
    Path x = sample_brownian(seed, grid);
    Path w = tanaka_driver_from_solution(x);
    return TanakaPaths{std::move(x), std::move(w)};
}

}  // namespace weaksde
