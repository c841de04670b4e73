#pragma once

#include <stdexcept>
#include <string>

namespace halfspace {

/// Invalid input or configuration: bad exponents, mismatched tags, malformed files.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical guard tripped: non-finite samples, spectral leakage, degenerate ratios.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace halfspace
