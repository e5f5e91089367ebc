#pragma once

#include "weaksde/path.hpp"
#include "weaksde/rng.hpp"
#include "weaksde/time_grid.hpp"

namespace weaksde {

/// Brownian motion on the grid: value 0 at the first grid point, increments
/// independent N(0, dt_i).
Path sample_brownian(Rng& rng, const TimeGrid& grid);
Path sample_brownian(const Seed& seed, const TimeGrid& grid);

}  // namespace weaksde
