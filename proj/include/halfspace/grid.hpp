#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace halfspace {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Boundary-condition tag carried by half-space fields.
enum class Boundary { None, Dirichlet, Neumann };

std::string to_string(Boundary bc);
Boundary boundary_from_string(const std::string& name);

/// Isotropic periodic box [-L, L)^n with N points per axis.
/// Axis n-1 (the last, fastest-varying index) is the normal axis x_n.
struct GridSpec {
    int dim = 1;
    double half_width = 1.0;
    std::size_t points = 8;
    bool staggered = true;

    double spacing() const { return 2.0 * half_width / static_cast<double>(points); }
    std::size_t size() const;       ///< N^n
    std::size_t half_size() const;  ///< N^(n-1) * N/2
    /// Coordinate of index k on the given axis; only the normal axis is staggered.
    double coordinate(std::size_t k, int axis) const;
    /// Nyquist frequency pi*N/(2L).
    double nyquist() const;
    bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int n, double L, std::size_t N, bool stagger);

/// Samples on the full grid, row-major with the normal axis fastest.
struct SampledField {
    GridSpec grid;
    std::vector<double> values;
};

/// Samples on the points with x_n > 0 of a staggered grid.
/// The local normal index k' corresponds to the global index N/2 + k'.
struct HalfField {
    GridSpec grid;
    std::vector<double> values;
    Boundary bc = Boundary::None;
};

using PointFunction = std::function<double(std::span<const double>)>;

SampledField sample(const GridSpec& grid, const PointFunction& expr);
HalfField sample_half(const GridSpec& grid, const PointFunction& expr, Boundary bc);

/// Midpoint-rule L^p norm; p = kInf gives the maximum modulus.
double lp_norm(const SampledField& f, double p);
double lp_norm(const HalfField& f, double p);
double lp_norm(std::span<const double> values, double cell_volume, double p);

/// Per-axis indices of a linear index; the last axis has `last` entries, the others N.
std::array<std::size_t, 3> unflatten(std::size_t index, int dim, std::size_t N, std::size_t last);

/// Returns a copy with a different tag. This is the only way a tag changes
/// outside the operations that document a swap.
HalfField with_boundary(HalfField f, Boundary bc);

void check_finite(std::span<const double> values, const char* what);

}  // namespace halfspace
