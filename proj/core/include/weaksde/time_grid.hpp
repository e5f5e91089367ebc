#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace weaksde {

enum class GridKind { uniform, logspaced, custom };

/// Strictly increasing, finite sample times. Endpoints are stored exactly
/// as given (no accumulation of increments), so two grids built from the
/// same parameters compare equal point for point.
class TimeGrid {
public:
    /// Arithmetic spacing. Any real t0 is allowed (log-time grids are used
    /// with negative starts).
    static TimeGrid uniform(double t0, double t1, int n);

    /// Geometric spacing; requires t0 > 0.
    static TimeGrid logspaced(double t0, double t1, int n);

    /// Caller-supplied times; must be finite, strictly increasing, length >= 2.
    static TimeGrid from_times(std::vector<double> times);

    GridKind kind() const { return kind_; }
    std::size_t size() const { return times_.size(); }
    double operator[](std::size_t i) const { return times_[i]; }
    double front() const { return times_.front(); }
    double back() const { return times_.back(); }
    /// times[i+1] - times[i]
    double dt(std::size_t i) const { return times_[i + 1] - times_[i]; }
    std::span<const double> times() const { return times_; }

    bool operator==(const TimeGrid& other) const { return times_ == other.times_; }

private:
    TimeGrid(GridKind kind, std::vector<double> times)
        : kind_(kind), times_(std::move(times)) {}

    GridKind kind_;
    std::vector<double> times_;
};

/// Factory matching the CLI surface; dispatches on kind.
TimeGrid make_grid(GridKind kind, double t0, double t1, int n);

}  // namespace weaksde
