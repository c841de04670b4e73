#pragma once

#include "halfspace/grid.hpp"

namespace halfspace {

/// Parity of a reflection across x_n = 0.
enum class Parity { Odd, Even };

SampledField odd_extend(const HalfField& hf);
SampledField even_extend(const HalfField& hf);
SampledField extend(const HalfField& hf, Parity parity);

/// Keeps the samples with x_n > 0.
HalfField restrict_half(const SampledField& f, Boundary bc);

/// Pointwise multiplication by sign(x_n).
SampledField apply_sign(const SampledField& f);

/// Parity matching a boundary condition: odd for Dirichlet, even for Neumann.
Parity parity_of(Boundary bc);

}  // namespace halfspace
