#include "halfspace/singular_integral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "halfspace/errors.hpp"

namespace halfspace {

double frac_lap_constant(double s) {
    return std::pow(2.0, s) * std::tgamma(0.5 * (1.0 + s)) / (std::sqrt(M_PI) * std::abs(std::tgamma(-0.5 * s)));
}

namespace {

// 8-point Gauss-Legendre on [0,1].
constexpr std::array<double, 8> kNodes{0.019855071751231856, 0.10166676129318664, 0.2372337950418355,
                                       0.4082826787521751,   0.5917173212478249,  0.7627662049581645,
                                       0.8983332387068134,   0.9801449282487681};
constexpr std::array<double, 8> kWeights{0.05061426814518813, 0.11119051722668724, 0.15685332293894364,
                                         0.18134189168918100, 0.18134189168918100, 0.15685332293894364,
                                         0.11119051722668724, 0.05061426814518813};

double minmod(double a, double b) {
    if (a * b <= 0.0) return 0.0;
    return std::abs(a) < std::abs(b) ? a : b;
}

/// Moments of z^{-1-s} over the cell [m h, (m+1) h], m >= 1, written relative to
/// the near end a: P0 = int w, R = int (z-a) w, Q = int (z-a)(z-b) w.
struct CellMoments {
    std::vector<double> p0, r, q;
};

CellMoments cell_moments(std::size_t count, double h, double s) {
    CellMoments m{std::vector<double>(count), std::vector<double>(count), std::vector<double>(count)};
    for (std::size_t k = 1; k < count; ++k) {
        const double a = static_cast<double>(k) * h;
        const double b = a + h;
        m.p0[k] = (std::pow(a, -s) - std::pow(b, -s)) / s;
        double r = 0.0;
        double q = 0.0;
        for (std::size_t g = 0; g < kNodes.size(); ++g) {
            const double u = kNodes[g];
            const double w = kWeights[g] * std::pow(a + h * u, -1.0 - s);
            r += w * u;
            q += w * u * (u - 1.0);
        }
        m.r[k] = r * h * h;
        m.q[k] = q * h * h * h;
    }
    return m;
}

}  // namespace

SampledField singular_integral_frac_lap(const SampledField& f, double s, std::size_t first, std::size_t last) {
    if (f.grid.dim != 1) throw ConfigError("singular-integral oracle is one-dimensional");
    if (!(s > 0.0 && s < 1.0)) throw ConfigError("singular-integral oracle requires 0 < s < 1");
    const std::size_t N = f.grid.points;
    last = std::min(last, N);
    const double h = f.grid.spacing();

    // Outside the box f is held at its edge samples (zero for compactly supported data).
    // Padded samples: two edge copies on each side, so node i sits at index i + 2.
    const double left_edge = f.values.front(), right_edge = f.values.back();
    std::vector<double> v(N + 4, left_edge);
    std::fill(v.begin() + 2 + static_cast<long>(N), v.end(), right_edge);
    std::copy(f.values.begin(), f.values.end(), v.begin() + 2);
    check_finite(v, "oracle input");
    std::vector<double> second(N + 4, 0.0);
    for (std::size_t i = 1; i + 1 < v.size(); ++i) second[i] = v[i + 1] - 2.0 * v[i] + v[i - 1];

    // Cell c joins padded nodes c and c+1; curvature coefficient c2 = f'' in value units / h^2.
    struct Cell {
        long left;  // unpadded index of the left node
        double f0, f1, c2;
    };
    std::vector<Cell> active;
    for (std::size_t c = 1; c + 2 < v.size(); ++c) {
        const double c2 = minmod(second[c], second[c + 1]) / (h * h);
        if (v[c] == 0.0 && v[c + 1] == 0.0 && c2 == 0.0) continue;
        active.push_back({static_cast<long>(c) - 2, v[c], v[c + 1], c2});
    }

    const CellMoments mom = cell_moments(N + 4, h, s);
    const double far_weight = 2.0 * std::pow(h, -s) / s;
    const double near_weight = std::pow(h, 2.0 - s) / (2.0 - s);
    const double c1s = frac_lap_constant(s);

    SampledField out{f.grid, std::vector<double>(N, 0.0)};
    for (std::size_t i = first; i < last; ++i) {
        const long li = static_cast<long>(i);
        const double fi = v[i + 2];
        const double curvature = second[i + 2] / (h * h);
        double acc = fi * far_weight - curvature * near_weight;
        // Cells span nodes -1..N; beyond them the edge values extend to infinity.
        if (left_edge != 0.0) acc -= left_edge * std::pow(static_cast<double>(i + 1) * h, -s) / s;
        if (right_edge != 0.0) acc -= right_edge * std::pow(static_cast<double>(N - i) * h, -s) / s;
        for (const Cell& cell : active) {
            double near, far;
            std::size_t m;
            if (cell.left >= li + 1) {
                m = static_cast<std::size_t>(cell.left - li);
                near = cell.f0;
                far = cell.f1;
            } else if (cell.left + 1 <= li - 1) {
                m = static_cast<std::size_t>(li - 1 - cell.left);
                near = cell.f1;
                far = cell.f0;
            } else {
                continue;  // touches x_i: covered by the Taylor term
            }
            const double slope = (far - near) / h;
            acc -= near * mom.p0[m] + slope * mom.r[m] + 0.5 * cell.c2 * mom.q[m];
        }
        out.values[i] = c1s * acc;
    }
    return out;
}

SampledField singular_integral_frac_lap(const SampledField& f, double s) {
    return singular_integral_frac_lap(f, s, 0, f.grid.points);
}

}  // namespace halfspace
