#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "halfspace/grid.hpp"
#include "halfspace/halfspace_ops.hpp"

namespace halfspace {

/// Closed-form test-function families, sampled afresh at every resolution.
enum class FamilyKind {
    Eigenmode,       ///< sin(k x_n) (Dirichlet) or cos(k x_n) (Neumann), k resolved on the box
    WindowedModes,   ///< three random modes under a smooth window, parity matched to the operator
    Bumps,           ///< smooth bumps at random interior centres and scales
    Adversarial,     ///< a x_n phi(x_n / sigma): nonzero normal derivative at the boundary
    Counterexample,  ///< x_n phi(x_n) times tangential cutoffs
};

std::string to_string(FamilyKind kind);
FamilyKind family_from_string(const std::string& name);

struct FamilySpec {
    FamilyKind kind = FamilyKind::WindowedModes;
    std::uint64_t seed = 1;
    std::size_t members = 20;
};

struct TestFunction {
    std::string label;
    PointFunction expr;
};

/// Members are generated from the seed alone, so the same functions are refined across grids.
/// `half_width` is the box L; supports stay inside the central half of the box.
std::vector<TestFunction> make_family(const FamilySpec& spec, int dim, Operator op, double half_width);

/// x phi(x) in one dimension, x_n phi(x_n) prod_k phi(x_k) in higher dimensions.
double counterexample_profile(std::span<const double> x);

}  // namespace halfspace
