#pragma once

#include <span>

namespace sgehom {

/// Least-squares slope of log(y) against log(x). Needs at least two points
/// with positive coordinates; returns 0 otherwise.
double loglog_slope(std::span<const double> x, std::span<const double> y);

} // namespace sgehom
