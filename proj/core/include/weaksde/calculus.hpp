#pragma once

#include "weaksde/path.hpp"

namespace weaksde {

/// Cumulative left-point Ito sum: out_0 = 0,
/// out_{j} = sum_{i<j} integrand_i * (driver_{i+1} - driver_i).
/// Both paths must share the same grid.
Path ito_sum(const Path& integrand, const Path& driver);

/// Cumulative sum of squared increments: out_0 = 0,
/// out_j = sum_{i<j} (value_{i+1} - value_i)^2.
Path quadratic_variation(const Path& path);

}  // namespace weaksde
