#pragma once

#include <cstddef>
#include <span>

namespace halfspace {

/// Ordinary least squares y = intercept + slope * x.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;  ///< infinite with fewer than three points
    double r_squared = 0.0;
    std::size_t points = 0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

double median(std::span<const double> values);

}  // namespace halfspace
