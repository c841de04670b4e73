#include "halfspace/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>

namespace halfspace {

namespace {

double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double bump_slope(double x) { return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }

std::uint64_t fnv1a(std::uint64_t h, const std::vector<double>& data) {
    for (double v : data) {
        unsigned char bytes[sizeof(double)];
        std::memcpy(bytes, &v, sizeof v);
        for (unsigned char b : bytes) {
            h ^= b;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

}  // namespace

double smooth_step_exact(double lambda) {
    if (lambda <= 1.0) return 1.0;
    if (lambda >= 2.0) return 0.0;
    const double a = bump(2.0 - lambda);
    const double b = bump(lambda - 1.0);
    return a / (a + b);
}

double smooth_step_derivative(double lambda) {
    if (lambda <= 1.0 || lambda >= 2.0) return 0.0;
    const double a = bump(2.0 - lambda);
    const double b = bump(lambda - 1.0);
    const double da = bump_slope(2.0 - lambda);
    const double db = bump_slope(lambda - 1.0);
    return -(da * b + a * db) / ((a + b) * (a + b));
}

SmoothStepTable::SmoothStepTable() : values_(kIntervals + 1), slopes_(kIntervals + 1) {
    for (int i = 0; i <= kIntervals; ++i) {
        const double lambda = 1.0 + static_cast<double>(i) / kIntervals;
        values_[i] = smooth_step_exact(lambda);
        slopes_[i] = smooth_step_derivative(lambda);
    }
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = fnv1a(h, values_);
    h = fnv1a(h, slopes_);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    hash_ = buf;
}

const SmoothStepTable& SmoothStepTable::instance() {
    static const SmoothStepTable table;
    return table;
}

double SmoothStepTable::operator()(double lambda) const {
    if (lambda <= 1.0) return 1.0;
    if (lambda >= 2.0) return 0.0;
    const double u = (lambda - 1.0) * kIntervals;
    const int i = std::min(static_cast<int>(u), kIntervals - 1);
    const double t = u - i;
    const double dx = 1.0 / kIntervals;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * values_[i] + h10 * dx * slopes_[i] + h01 * values_[i + 1] + h11 * dx * slopes_[i + 1];
}

double cutoff(double x) { return smooth_step_exact(2.0 * std::abs(x)); }

}  // namespace halfspace
