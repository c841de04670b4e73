#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "halfspace/grid.hpp"
#include "halfspace/spectral.hpp"

namespace halfspace {

struct SelftestOptions {
    std::size_t points = 4096;
    double half_width = 8.0;
    bool quick = false;
    /// Multiplies phi_0; anything but 1 is a deliberate mis-normalization.
    double phi0_gain = 1.0;
};

struct SelftestCheck {
    std::string name;
    double value = 0.0;      ///< worst observed error
    double tolerance = 0.0;
    std::size_t cases = 0;
    bool passed = false;
};

struct SelftestReport {
    GridSpec grid;
    DyadicBank bank;
    std::vector<SelftestCheck> checks;

    bool passed() const;
};

/// Eigenfunction exactness, partition of unity, the odd-extension norm identity through a
/// serialization round trip, spectral against singular-integral quadrature, parity identities
/// and the Leibniz identity.
SelftestReport run_selftest(const SelftestOptions& options);

}  // namespace halfspace
