#include "weaksde/time_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace weaksde {

namespace {

void check_common(double t0, double t1, int n) {
    if (n < 2) throw std::invalid_argument("TimeGrid: need at least 2 points");
    if (!std::isfinite(t0) || !std::isfinite(t1))
        throw std::invalid_argument("TimeGrid: endpoints must be finite");
    if (!(t1 > t0)) throw std::invalid_argument("TimeGrid: t1 must exceed t0");
}

}  // namespace

TimeGrid TimeGrid::uniform(double t0, double t1, int n) {
    check_common(t0, t1, n);
    std::vector<double> times(static_cast<std::size_t>(n));
    const double span = t1 - t0;
    for (int i = 0; i < n; ++i)
        times[static_cast<std::size_t>(i)] = t0 + span * static_cast<double>(i) / (n - 1);
    times.front() = t0;
    times.back() = t1;
    return TimeGrid(GridKind::uniform, std::move(times));
}

TimeGrid TimeGrid::logspaced(double t0, double t1, int n) {
    check_common(t0, t1, n);
    if (!(t0 > 0.0)) throw std::domain_error("TimeGrid: log spacing requires t0 > 0");
    std::vector<double> times(static_cast<std::size_t>(n));
    const double ratio = t1 / t0;
    for (int i = 0; i < n; ++i)
        times[static_cast<std::size_t>(i)] =
            t0 * std::pow(ratio, static_cast<double>(i) / (n - 1));
    times.front() = t0;
    times.back() = t1;
    return TimeGrid(GridKind::logspaced, std::move(times));
}

TimeGrid TimeGrid::from_times(std::vector<double> times) {
    if (times.size() < 2) throw std::invalid_argument("TimeGrid: need at least 2 points");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]))
            throw std::invalid_argument("TimeGrid: times must be finite");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw std::invalid_argument("TimeGrid: times must be strictly increasing");
    }
    return TimeGrid(GridKind::custom, std::move(times));
}

TimeGrid make_grid(GridKind kind, double t0, double t1, int n) {
    switch (kind) {
        case GridKind::uniform: return TimeGrid::uniform(t0, t1, n);
        case GridKind::logspaced: return TimeGrid::logspaced(t0, t1, n);
        case GridKind::custom: break;
    }
    throw std::invalid_argument("make_grid: custom grids are built with TimeGrid::from_times");
}

}  // namespace weaksde
