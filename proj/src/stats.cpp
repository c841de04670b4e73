#include "halfspace/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "halfspace/errors.hpp"

namespace halfspace {

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ConfigError("line fit needs at least two matched points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw ConfigError("line fit needs distinct abscissae");
    LinearFit fit;
    fit.points = x.size();
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        ssr += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
    fit.slope_stderr = x.size() > 2 ? std::sqrt(ssr / (n - 2.0) / sxx) : std::numeric_limits<double>::infinity();
    return fit;
}

double median(std::span<const double> values) {
    if (values.empty()) throw ConfigError("median of an empty sequence");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace halfspace
