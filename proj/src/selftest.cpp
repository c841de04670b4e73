#include "halfspace/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <variant>

#include "halfspace/experiments.hpp"
#include "halfspace/extension.hpp"
#include "halfspace/families.hpp"
#include "halfspace/field_io.hpp"
#include "halfspace/halfspace_ops.hpp"
#include "halfspace/singular_integral.hpp"
#include "halfspace/smooth.hpp"

namespace halfspace {

namespace {

double relative_l2(std::span<const double> a, std::span<const double> b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

SelftestCheck finish(std::string name, double worst, double tolerance, std::size_t cases) {
    return {std::move(name), worst, tolerance, cases, worst <= tolerance};
}

/// Log-spaced mode numbers in [N/128, N/4]. Lower modes are exact too, but FFT round-off at
/// high frequency is amplified by (xi_Nyquist / k)^s relative to them.
std::vector<std::size_t> mode_numbers(std::size_t N, std::size_t count) {
    const double lo = std::log(std::max<double>(1.0, static_cast<double>(N) / 128.0));
    const double hi = std::log(static_cast<double>(N) / 4.0);
    std::vector<std::size_t> modes;
    for (std::size_t i = 0; i < count; ++i) {
        const double t = count > 1 ? static_cast<double>(i) / static_cast<double>(count - 1) : 0.0;
        auto m = static_cast<std::size_t>(std::lround(std::exp(lo + (hi - lo) * t)));
        if (!modes.empty() && m <= modes.back()) m = modes.back() + 1;
        modes.push_back(m);
    }
    return modes;
}

SelftestCheck eigenfunctions(const GridSpec& grid, Operator op, bool quick) {
    const auto modes = mode_numbers(grid.points, quick ? 5 : 20);
    const std::vector<double> orders = quick ? std::vector<double>{1.0, 2.5} : std::vector<double>{0.5, 1.0, 2.0, 2.5};
    double worst = 0.0;
    std::size_t cases = 0;
    for (std::size_t m : modes) {
        const double k = std::numbers::pi * static_cast<double>(m) / grid.half_width;
        const HalfField f = sample_half(
            grid,
            [k, op](std::span<const double> x) {
                return op == Operator::Dirichlet ? std::sin(k * x.back()) : std::cos(k * x.back());
            },
            boundary_of(op));
        for (double s : orders) {
            const HalfField out = frac_power(f, op, s);
            std::vector<double> expected(f.values.size());
            std::transform(f.values.begin(), f.values.end(), expected.begin(),
                           [&](double v) { return std::pow(k, s) * v; });
            worst = std::max(worst, relative_l2(out.values, expected));
            ++cases;
        }
    }
    return finish(op == Operator::Dirichlet ? "eigenfunction_dirichlet" : "eigenfunction_neumann", worst, 1e-10,
                  cases);
}

SelftestCheck extension_identity(const GridSpec& grid, bool quick) {
    const auto corpus = make_family({FamilyKind::Bumps, 7, quick ? 3u : 10u}, grid.dim, Operator::Dirichlet,
                                    grid.half_width);
    double worst = 0.0;
    std::size_t cases = 0;
    for (const auto& member : corpus) {
        std::stringstream buffer;
        write_field(buffer, sample_half(grid, member.expr, Boundary::Dirichlet));
        const HalfField f = std::get<HalfField>(read_field(buffer));
        for (double s : {0.5, 1.0, 2.0}) {
            const HalfField half = frac_power(f, Operator::Dirichlet, s);
            const SampledField full = fractional_laplacian(odd_extend(f), s);
            for (double p : {1.0, 2.0, 4.0}) {
                const double lhs = std::pow(2.0, 1.0 / p) * lp_norm(half, p);
                const double rhs = lp_norm(full, p);
                worst = std::max(worst, std::abs(lhs - rhs) / rhs);
                ++cases;
            }
        }
    }
    return finish("extension_identity", worst, 1e-12, cases);
}

SelftestCheck oracle_equivalence(bool quick) {
    // The spectral operator is periodic and the quadrature zero-extended; their gap decays like
    // L^{-1-s}, so the box must be wide.
    const GridSpec grid = make_grid(1, 512.0, quick ? 65536 : 131072, true);
    std::size_t first = grid.points, last = 0;
    for (std::size_t k = 0; k < grid.points; ++k) {
        if (std::abs(grid.coordinate(k, 0)) <= 4.0) {
            first = std::min(first, k);
            last = k + 1;
        }
    }
    double worst = 0.0;
    std::size_t cases = 0;
    for (double width : {1.0, 1.5}) {
        const SampledField f =
            sample(grid, [width](std::span<const double> x) { return cutoff((x[0] - 0.25) / width); });
        for (double s : {0.25, 0.5, 0.75}) {
            const SampledField spectral = fractional_laplacian(f, s);
            const SampledField oracle = singular_integral_frac_lap(f, s, first, last);
            const std::span<const double> a(spectral.values.data() + first, last - first);
            const std::span<const double> b(oracle.values.data() + first, last - first);
            worst = std::max(worst, relative_l2(a, b));
            ++cases;
        }
    }
    return finish("oracle_equivalence", worst, 1e-3, cases);
}

SelftestCheck parity_identities(const GridSpec& grid) {
    const auto corpus = make_family({FamilyKind::WindowedModes, 3, 4}, grid.dim, Operator::Dirichlet, grid.half_width);
    const std::size_t N = grid.points;
    double worst = 0.0;
    std::size_t cases = 0;
    for (const auto& member : corpus) {
        const HalfField f = sample_half(grid, member.expr, Boundary::Dirichlet);
        const SampledField odd = odd_extend(f);
        const SampledField even = even_extend(with_boundary(f, Boundary::Neumann));

        const HalfField back = restrict_half(odd, Boundary::Dirichlet);
        for (std::size_t i = 0; i < f.values.size(); ++i) worst = std::max(worst, std::abs(back.values[i] - f.values[i]));
        for (std::size_t k = 0; k < N; ++k) {
            worst = std::max(worst, std::abs(odd.values[k] + odd.values[N - 1 - k]));
            worst = std::max(worst, std::abs(even.values[k] - even.values[N - 1 - k]));
        }

        for (double s : {0.5, 1.5}) {
            const SampledField lo = fractional_laplacian(odd, s);
            const SampledField le = fractional_laplacian(even, s);
            const double so = max_abs(lo.values), se = max_abs(le.values);
            for (std::size_t k = 0; k < N; ++k) {
                worst = std::max(worst, std::abs(lo.values[k] + lo.values[N - 1 - k]) / so);
                worst = std::max(worst, std::abs(le.values[k] - le.values[N - 1 - k]) / se);
            }
        }

        const HalfField df = normal_derivative(f);
        if (df.bc != Boundary::Neumann) worst = kInf;
        const SampledField reference = partial_derivative(odd, grid.dim - 1);
        const SampledField swapped = even_extend(df);
        const double scale = max_abs(reference.values);
        for (std::size_t k = 0; k < N; ++k) {
            worst = std::max(worst, std::abs(swapped.values[k] - reference.values[k]) / scale);
        }
        cases += 4;
    }
    return finish("parity_identities", worst, 1e-12, cases);
}

SelftestCheck leibniz(const GridSpec& grid) {
    const auto corpus = make_family({FamilyKind::WindowedModes, 5, 4}, grid.dim, Operator::Dirichlet, grid.half_width);
    double worst = 0.0;
    std::size_t cases = 0;
    for (std::size_t i = 0; i + 1 < corpus.size(); i += 2) {
        const HalfField f = sample_half(grid, corpus[i].expr, Boundary::Dirichlet);
        const HalfField g = sample_half(grid, corpus[i + 1].expr, Boundary::Dirichlet);
        worst = std::max(worst, leibniz_decomposition(f, g).identity_residual);
        ++cases;
    }
    return finish("leibniz_identity", worst, 1e-8, cases);
}

}  // namespace

bool SelftestReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const SelftestCheck& c) { return c.passed; });
}

SelftestReport run_selftest(const SelftestOptions& options) {
    SelftestReport report;
    report.grid = make_grid(1, options.half_width, options.points, true);
    report.bank = build_bank(report.grid, options.phi0_gain);
    const GridSpec& grid = report.grid;

    report.checks.push_back(eigenfunctions(grid, Operator::Dirichlet, options.quick));
    report.checks.push_back(eigenfunctions(grid, Operator::Neumann, options.quick));
    report.checks.push_back(finish("partition_of_unity", partition_residual(report.bank, grid, false), 1e-8, 1));
    report.checks.push_back(
        finish("partition_of_unity_inhomogeneous", partition_residual(report.bank, grid, true), 1e-8, 1));
    report.checks.push_back(extension_identity(grid, options.quick));
    report.checks.push_back(oracle_equivalence(options.quick));
    report.checks.push_back(parity_identities(grid));
    report.checks.push_back(leibniz(grid));
    return report;
}

}  // namespace halfspace
