#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "weaksde/time_grid.hpp"

namespace weaksde {

/// Scalar trajectory sampled on a time grid.
class Path {
public:
    Path(TimeGrid grid, std::vector<double> values);

    const TimeGrid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }
    double front() const { return values_.front(); }
    double back() const { return values_.back(); }

private:
    TimeGrid grid_;
    std::vector<double> values_;
};

/// Planar trajectory sampled on a time grid.
struct PlanarPath {
    TimeGrid grid;
    std::vector<double> x1;
    std::vector<double> x2;

    std::size_t size() const { return x1.size(); }
};

/// Serializes a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

/// CSV with header "t,v1" resp. "t,v1,v2", one row per grid point.
void write_csv(std::ostream& os, const Path& path);
void write_csv(std::ostream& os, const PlanarPath& path);

/// Reads a planar-path CSV produced by this project. Accepts headers with
/// columns (t, v1, v2) or (t, x1, x2); for wider tables (e.g. the polar
/// dump) the x1/x2 columns are located by name.
PlanarPath read_planar_csv(std::istream& is);

}  // namespace weaksde
