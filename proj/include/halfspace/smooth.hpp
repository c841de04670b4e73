#pragma once

#include <string>
#include <vector>

namespace halfspace {

/// Smooth step eta: 1 on [0,1], 0 on [2,inf), built from the exp(-1/x) bump primitive.
double smooth_step_exact(double lambda);
double smooth_step_derivative(double lambda);

/// Tabulated eta on [1,2] (2^16 intervals) with cubic Hermite interpolation.
class SmoothStepTable {
public:
    static constexpr int kIntervals = 1 << 16;

    static const SmoothStepTable& instance();
    double operator()(double lambda) const;
    /// FNV-1a digest of the tabulated values and slopes, as 16 hex digits.
    const std::string& hash() const { return hash_; }

private:
    SmoothStepTable();
    std::vector<double> values_;
    std::vector<double> slopes_;
    std::string hash_;
};

/// Counterexample cutoff: 1 on [0,1/2], 0 on [1,inf), even in x.
double cutoff(double x);

}  // namespace halfspace
