#include "halfspace/families.hpp"

#include <array>
#include <cmath>
#include <random>

#include "halfspace/errors.hpp"
#include "halfspace/smooth.hpp"

namespace halfspace {

std::string to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::Eigenmode: return "eigenmode";
        case FamilyKind::WindowedModes: return "windowed_modes";
        case FamilyKind::Bumps: return "bumps";
        case FamilyKind::Adversarial: return "adversarial";
        case FamilyKind::Counterexample: return "counterexample";
    }
    return "unknown";
}

FamilyKind family_from_string(const std::string& name) {
    for (auto kind : {FamilyKind::Eigenmode, FamilyKind::WindowedModes, FamilyKind::Bumps, FamilyKind::Adversarial,
                      FamilyKind::Counterexample}) {
        if (name == to_string(kind)) return kind;
    }
    throw ConfigError("unknown test-function family '" + name + "'");
}

double counterexample_profile(std::span<const double> x) {
    const std::size_t n = x.size();
    double v = x[n - 1] * cutoff(x[n - 1]);
    for (std::size_t d = 0; d + 1 < n; ++d) v *= cutoff(x[d]);
    return v;
}

namespace {

/// Smooth window equal to 1 near the origin and vanishing for |x| >= c.
double window(double x, double c) { return smooth_step_exact(2.0 * std::abs(x) / c); }

/// Bump peaking at 1 for r = 0 and vanishing for |r| >= 1.
double bump(double r) { return smooth_step_exact(1.0 + std::abs(r)); }

}  // namespace

std::vector<TestFunction> make_family(const FamilySpec& spec, int dim, Operator op, double half_width) {
    if (spec.members == 0) throw ConfigError("a family needs at least one member");
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto uniform = [&](double a, double b) { return a + (b - a) * unit(rng); };
    const double scale = half_width / 8.0;
    const bool odd = op == Operator::Dirichlet;

    std::vector<TestFunction> out;
    for (std::size_t i = 0; i < spec.members; ++i) {
        std::vector<double> tangential(dim - 1);
        for (auto& c : tangential) c = uniform(1.5, 3.5) * scale;
        auto tangent_factor = [tangential](std::span<const double> x) {
            double v = 1.0;
            for (std::size_t d = 0; d < tangential.size(); ++d) v *= window(x[d], tangential[d]);
            return v;
        };
        const std::string tag = to_string(spec.kind) + "#" + std::to_string(i);

        switch (spec.kind) {
            case FamilyKind::Eigenmode: {
                const double k = M_PI * static_cast<double>(i + 1) / half_width;
                const double k1 = M_PI / half_width;
                out.push_back({tag, [k, k1, odd, dim](std::span<const double> x) {
                                   double v = odd ? std::sin(k * x[dim - 1]) : std::cos(k * x[dim - 1]);
                                   for (int d = 0; d + 1 < dim; ++d) v *= std::cos(k1 * x[d]);
                                   return v;
                               }});
                break;
            }
            case FamilyKind::WindowedModes: {
                std::array<double, 3> a{}, k{};
                for (int m = 0; m < 3; ++m) {
                    a[m] = gauss(rng);
                    k[m] = uniform(0.5, 6.0) / scale;
                }
                const double c = uniform(1.5, 3.5) * scale;
                out.push_back({tag, [=](std::span<const double> x) {
                                   const double t = x[dim - 1];
                                   double v = 0.0;
                                   for (int m = 0; m < 3; ++m) v += a[m] * (odd ? std::sin(k[m] * t) : std::cos(k[m] * t));
                                   return v * window(t, c) * tangent_factor(x);
                               }});
                break;
            }
            case FamilyKind::Bumps: {
                const double amp = (unit(rng) < 0.5 ? -1.0 : 1.0) * uniform(0.5, 1.5);
                const double centre = uniform(1.5, 2.8) * scale;
                const double width = uniform(0.3, 1.0) * scale;
                out.push_back({tag, [=](std::span<const double> x) {
                                   return amp * bump((x[dim - 1] - centre) / width) * tangent_factor(x);
                               }});
                break;
            }
            case FamilyKind::Adversarial: {
                const double amp = uniform(0.5, 1.5);
                const double tau = uniform(0.5, 1.5) * scale;
                out.push_back({tag, [=](std::span<const double> x) {
                                   const double t = x[dim - 1];
                                   return amp * t * cutoff(t / tau) * tangent_factor(x);
                               }});
                break;
            }
            case FamilyKind::Counterexample:
                out.push_back({tag, [](std::span<const double> x) { return counterexample_profile(x); }});
                break;
        }
    }
    return out;
}

}  // namespace halfspace
