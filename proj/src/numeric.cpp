#include "sgehom/numeric.hpp"

#include <cmath>

namespace sgehom {

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(x[k] > 0.0) || !(y[k] > 0.0)) return 0.0;
        const double lx = std::log(x[k]), ly = std::log(y[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double m = static_cast<double>(x.size());
    const double den = m * sxx - sx * sx;
    return den != 0.0 ? (m * sxy - sx * sy) / den : 0.0;
}

} // namespace sgehom
