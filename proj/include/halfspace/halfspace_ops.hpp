#pragma once

#include "halfspace/grid.hpp"

namespace halfspace {

/// The Dirichlet (A_D) or Neumann (A_N) Laplacian on the half-space.
enum class Operator { Dirichlet, Neumann };

Boundary boundary_of(Operator op);
std::string to_string(Operator op);
Operator operator_from_string(const std::string& name);

/// A^{s/2} = restrict(Lambda^s(extension)) with odd (A_D) or even (A_N) reflection.
HalfField frac_power(const HalfField& hf, Operator op, double s);
/// (1 + A)^{s/2}.
HalfField bessel_power(const HalfField& hf, Operator op, double s);
/// e^{-t A^{s/2}} for 0 < s <= 2.
HalfField semigroup(const HalfField& hf, Operator op, double t, double s);
/// d/dx_n; the tag swaps between Dirichlet and Neumann.
HalfField normal_derivative(const HalfField& hf);
/// d/dx_k along a tangential axis (0-based k < n-1); k = n-1 is the normal derivative.
HalfField tangential_derivative(const HalfField& hf, int axis);

}  // namespace halfspace
