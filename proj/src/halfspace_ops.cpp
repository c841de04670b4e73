#include "halfspace/halfspace_ops.hpp"

#include "halfspace/errors.hpp"
#include "halfspace/extension.hpp"
#include "halfspace/spectral.hpp"

namespace halfspace {

Boundary boundary_of(Operator op) { return op == Operator::Dirichlet ? Boundary::Dirichlet : Boundary::Neumann; }

std::string to_string(Operator op) { return op == Operator::Dirichlet ? "dirichlet" : "neumann"; }

Operator operator_from_string(const std::string& name) {
    if (name == "dirichlet" || name == "D" || name == "A_D") return Operator::Dirichlet;
    if (name == "neumann" || name == "N" || name == "A_N") return Operator::Neumann;
    throw ConfigError("unknown operator '" + name + "' (expected dirichlet or neumann)");
}

namespace {

SampledField extend_for(const HalfField& hf, Operator op) {
    const Boundary bc = boundary_of(op);
    if (hf.bc != Boundary::None && hf.bc != bc) {
        throw ConfigError(to_string(hf.bc) + "-tagged field used with the " + to_string(op) + " Laplacian");
    }
    return extend(hf, op == Operator::Dirichlet ? Parity::Odd : Parity::Even);
}

}  // namespace

HalfField frac_power(const HalfField& hf, Operator op, double s) {
    return restrict_half(fractional_laplacian(extend_for(hf, op), s), boundary_of(op));
}

HalfField bessel_power(const HalfField& hf, Operator op, double s) {
    return restrict_half(bessel_potential(extend_for(hf, op), s), boundary_of(op));
}

HalfField semigroup(const HalfField& hf, Operator op, double t, double s) {
    if (!(s > 0.0 && s <= 2.0)) throw ConfigError("semigroup order s must lie in (0, 2]");
    return restrict_half(semigroup_symbol(extend_for(hf, op), t, s), boundary_of(op));
}

HalfField normal_derivative(const HalfField& hf) {
    if (hf.bc == Boundary::None) throw ConfigError("normal derivative needs a Dirichlet or Neumann tag");
    const Boundary swapped = hf.bc == Boundary::Dirichlet ? Boundary::Neumann : Boundary::Dirichlet;
    return restrict_half(partial_derivative(extend(hf, parity_of(hf.bc)), hf.grid.dim - 1), swapped);
}

HalfField tangential_derivative(const HalfField& hf, int axis) {
    const int n = hf.grid.dim;
    if (axis == n - 1) return normal_derivative(hf);
    if (n < 2 || axis < 0 || axis >= n) throw ConfigError("tangential axis out of range");
    const Parity parity = hf.bc == Boundary::Neumann ? Parity::Even : Parity::Odd;
    return restrict_half(partial_derivative(extend(hf, parity), axis), hf.bc);
}

}  // namespace halfspace
