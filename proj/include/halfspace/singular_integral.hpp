#pragma once

#include <cstddef>

#include "halfspace/grid.hpp"

namespace halfspace {

/// c_{1,s} = 2^s Gamma((1+s)/2) / (sqrt(pi) |Gamma(-s/2)|).
double frac_lap_constant(double s);

/// Lambda^s f on a 1-D field by direct quadrature of
///   c_{1,s} * integral (f(x) - f(y)) / |x - y|^{1+s} dy,
/// holding f at its edge samples outside the box. Cells away from x use exact moments of a
/// piecewise-quadratic reconstruction (curvature limited by minmod); the two cells
/// touching x use a second-order Taylor expansion. Only nodes in [first, last) are
/// evaluated; others are left at zero.
SampledField singular_integral_frac_lap(const SampledField& f, double s, std::size_t first, std::size_t last);
SampledField singular_integral_frac_lap(const SampledField& f, double s);

}  // namespace halfspace
