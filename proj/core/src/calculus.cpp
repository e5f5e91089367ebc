#include "weaksde/calculus.hpp"

#include <stdexcept>

namespace weaksde {

Path ito_sum(const Path& integrand, const Path& driver) {
    if (!(integrand.grid() == driver.grid()))
        throw std::invalid_argument("ito_sum: integrand and driver must share a grid");
    std::vector<double> out(integrand.size());
    out[0] = 0.0;
    for (std::size_t i = 0; i + 1 < integrand.size(); ++i)
        out[i + 1] = out[i] + integrand[i] * (driver[i + 1] - driver[i]);
    return Path(integrand.grid(), std::move(out));
}

Path quadratic_variation(const Path& path) {
    std::vector<double> out(path.size());
    out[0] = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const double d = path[i + 1] - path[i];
        out[i + 1] = out[i] + d * d;
    }
    return Path(path.grid(), std::move(out));
}

}  // namespace weaksde
