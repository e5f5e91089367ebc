#pragma once

#include "weaksde/path.hpp"
#include "weaksde/rng.hpp"

namespace weaksde {

/// Solution path X (a Brownian motion from 0) and the driving noise W
/// recovered from it: dW_i = sign(X_{t_i}) dX_i, left-point sign with
/// sign(0) := +1. W is itself a Brownian motion at grid level.
struct TanakaPaths {
    Path x;
    Path w;
};

/// Requires a uniform grid starting at 0.
TanakaPaths simulate_tanaka(const Seed& seed, const TimeGrid& grid);

/// One driver increment: sign(x_here) * (x_next - x_here), sign(0) := +1.
/// Mirroring the solution leaves this value bit-identical wherever
/// x_here != 0.
double tanaka_driver_increment(double x_here, double x_next);

/// Recovers W from an arbitrary solution path (used by the sign-flip
/// checks, which feed in -X).
Path tanaka_driver_from_solution(const Path& x);

}  // namespace weaksde
