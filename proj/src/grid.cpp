#include "halfspace/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "halfspace/errors.hpp"

namespace halfspace {

std::string to_string(Boundary bc) {
    switch (bc) {
        case Boundary::Dirichlet: return "dirichlet";
        case Boundary::Neumann: return "neumann";
        case Boundary::None: break;
    }
    return "none";
}

Boundary boundary_from_string(const std::string& name) {
    if (name == "dirichlet" || name == "D") return Boundary::Dirichlet;
    if (name == "neumann" || name == "N") return Boundary::Neumann;
    if (name == "none") return Boundary::None;
    throw ConfigError("unknown boundary condition '" + name + "'");
}

std::size_t GridSpec::size() const {
    std::size_t total = 1;
    for (int d = 0; d < dim; ++d) total *= points;
    return total;
}

std::size_t GridSpec::half_size() const { return size() / 2; }

double GridSpec::coordinate(std::size_t k, int axis) const {
    const double offset = (staggered && axis == dim - 1) ? 0.5 : 0.0;
    return -half_width + (static_cast<double>(k) + offset) * spacing();
}

double GridSpec::nyquist() const {
    return M_PI * static_cast<double>(points) / (2.0 * half_width);
}

GridSpec make_grid(int n, double L, std::size_t N, bool stagger) {
    if (n < 1 || n > 3) throw ConfigError("grid dimension must be 1, 2 or 3");
    if (N < 8 || !std::has_single_bit(N)) throw ConfigError("grid size N must be a power of two >= 8");
    if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("box half-width L must be positive");
    return GridSpec{n, L, N, stagger};
}

std::array<std::size_t, 3> unflatten(std::size_t index, int dim, std::size_t N, std::size_t last) {
    std::array<std::size_t, 3> idx{};
    idx[dim - 1] = index % last;
    index /= last;
    for (int d = dim - 2; d >= 0; --d) {
        idx[d] = index % N;
        index /= N;
    }
    return idx;
}

namespace {

std::string describe_point(std::span<const double> x) {
    std::ostringstream os;
    os.precision(17);
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ")";
    return os.str();
}

template <class Store>
void fill(const GridSpec& grid, std::size_t count, std::size_t last, std::size_t last_offset,
          const PointFunction& expr, Store store) {
    std::array<double, 3> x{};
    for (std::size_t i = 0; i < count; ++i) {
        const auto idx = unflatten(i, grid.dim, grid.points, last);
        for (int d = 0; d < grid.dim; ++d) {
            const std::size_t k = idx[d] + (d == grid.dim - 1 ? last_offset : 0);
            x[d] = grid.coordinate(k, d);
        }
        const std::span<const double> point(x.data(), grid.dim);
        const double v = expr(point);
        if (!std::isfinite(v)) throw NumericalError("non-finite sample at x = " + describe_point(point));
        store(i, v);
    }
}

}  // namespace

SampledField sample(const GridSpec& grid, const PointFunction& expr) {
    SampledField f{grid, std::vector<double>(grid.size())};
    fill(grid, grid.size(), grid.points, 0, expr, [&](std::size_t i, double v) { f.values[i] = v; });
    return f;
}

HalfField sample_half(const GridSpec& grid, const PointFunction& expr, Boundary bc) {
    if (!grid.staggered) throw ConfigError("half-space fields require a staggered grid");
    HalfField f{grid, std::vector<double>(grid.half_size()), bc};
    fill(grid, grid.half_size(), grid.points / 2, grid.points / 2, expr,
         [&](std::size_t i, double v) { f.values[i] = v; });
    return f;
}

double lp_norm(std::span<const double> values, double cell_volume, double p) {
    if (!(p >= 1.0)) throw ConfigError("L^p norm requires p >= 1");
    double peak = 0.0;
    for (double v : values) peak = std::max(peak, std::abs(v));
    if (std::isinf(p) || peak == 0.0) return peak;
    double sum = 0.0;
    if (p == 2.0) {
        for (double v : values) sum += (v / peak) * (v / peak);
        return peak * std::sqrt(sum * cell_volume);
    }
    for (double v : values) sum += std::pow(std::abs(v) / peak, p);
    return peak * std::pow(sum * cell_volume, 1.0 / p);
}

double lp_norm(const SampledField& f, double p) {
    return lp_norm(f.values, std::pow(f.grid.spacing(), f.grid.dim), p);
}

double lp_norm(const HalfField& f, double p) {
    return lp_norm(f.values, std::pow(f.grid.spacing(), f.grid.dim), p);
}

HalfField with_boundary(HalfField f, Boundary bc) {
    f.bc = bc;
    return f;
}

void check_finite(std::span<const double> values, const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw NumericalError(std::string(what) + ": non-finite value at index " + std::to_string(i));
        }
    }
}

}  // namespace halfspace
