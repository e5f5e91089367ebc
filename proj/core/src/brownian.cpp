#include "weaksde/brownian.hpp"

#include <cmath>

namespace weaksde {

Path sample_brownian(Rng& rng, const TimeGrid& grid) {
    std::vector<double> values(grid.size());
    values[0] = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        values[i + 1] = values[i] + std::sqrt(grid.dt(i)) * rng.normal();
    return Path(grid, std::move(values));
}

Path sample_brownian(const Seed& seed, const TimeGrid& grid) {
    Rng rng(seed);
    return sample_brownian(rng, grid);
}

}  // namespace weaksde
