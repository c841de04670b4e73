// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "halfspace/experiments.hpp"
#include "halfspace/extension.hpp"
#include "halfspace/field_io.hpp"
#include "halfspace/parallel.hpp"
#include "halfspace/report.hpp"
#include "halfspace/selftest.hpp"
#include "halfspace/singular_integral.hpp"
#include "halfspace/smooth.hpp"

using namespace halfspace;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double relative_l2(std::span<const double> a, std::span<const double> b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

std::string verdict_of(const RatioReport& r) { return to_string(r.summary.verdict); }

// 1. A^{s/2} on sin / cos eigenfunctions, 20 modes, four orders, both operators.
void eigenfunctions(Outcome& o) {
    const GridSpec grid = make_grid(1, 8.0, 4096, true);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        // log-spaced mode numbers in [N/128, N/4]
        const double m = std::round(32.0 * std::pow(32.0, i / 19.0));
        const double k = std::numbers::pi * m / grid.half_width;
        for (Operator op : {Operator::Dirichlet, Operator::Neumann}) {
            const HalfField f = sample_half(
                grid,
                [k, op](std::span<const double> x) { return op == Operator::Dirichlet ? std::sin(k * x[0]) : std::cos(k * x[0]); },
                boundary_of(op));
            for (double s : {0.5, 1.0, 2.0, 2.5}) {
                const HalfField out = frac_power(f, op, s);
                std::vector<double> expected(f.values);
                for (double& v : expected) v *= std::pow(k, s);
                worst = std::max(worst, relative_l2(out.values, expected));
            }
        }
    }
    o.detail << "worst relative L2 error " << worst << " (tolerance 1e-10)";
    o.require(worst < 1e-10, "error");
}

// 2. 2^{1/p} ||A_D^{s/2} f||_p = ||Lambda^s f_odd||_p after a serialization round trip.
void extension_identity(Outcome& o) {
    const GridSpec grid = make_grid(1, 8.0, 4096, true);
    double worst = 0.0;
    for (const auto& member : make_family({FamilyKind::Bumps, 2024, 10}, 1, Operator::Dirichlet, grid.half_width)) {
        std::stringstream buffer;
        write_field(buffer, sample_half(grid, member.expr, Boundary::Dirichlet));
        const HalfField f = std::get<HalfField>(read_field(buffer));
        for (double s : {0.5, 1.0, 2.0}) {
            const HalfField half = frac_power(f, Operator::Dirichlet, s);
            const SampledField full = fractional_laplacian(odd_extend(f), s);
            for (double p : {1.0, 2.0, 4.0}) {
                const double rhs = lp_norm(full, p);
                worst = std::max(worst, std::abs(std::pow(2.0, 1.0 / p) * lp_norm(half, p) - rhs) / rhs);
            }
        }
    }
    o.detail << "worst relative gap " << worst << " over 10 fields x 3 s x 3 p (tolerance 1e-12)";
    o.require(worst <= 1e-12, "identity");
}

// 3. Partition of unity, homogeneous and inhomogeneous.
void partition(Outcome& o) {
    double worst_h = 0.0, worst_i = 0.0;
    for (auto [L, N] : {std::pair{2.0 * std::numbers::pi, std::size_t{4096}}, std::pair{4.0, std::size_t{32768}},
                        std::pair{8.0, std::size_t{1024}}}) {
        const GridSpec grid = make_grid(1, L, N, true);
        const DyadicBank bank = build_bank(grid);
        worst_h = std::max(worst_h, partition_residual(bank, grid, false));
        worst_i = std::max(worst_i, partition_residual(bank, grid, true));
    }
    o.detail << "homogeneous " << worst_h << ", inhomogeneous " << worst_i << " (tolerance 1e-8)";
    o.require(worst_h < 1e-8 && worst_i < 1e-8, "residual");
}

// 4. Spectral Lambda^s against singular-integral quadrature on 10 bumps.
void oracle(Outcome& o) {
    const GridSpec grid = make_grid(1, 512.0, 131072, true);
    std::size_t first = grid.points, last = 0;
    for (std::size_t k = 0; k < grid.points; ++k) {
        if (std::abs(grid.coordinate(k, 0)) <= 6.0) {
            first = std::min(first, k);
            last = k + 1;
        }
    }
    double worst = 0.0;
    for (int b = 0; b < 10; ++b) {
        const double centre = -1.5 + 0.33 * b;
        const double width = 0.9 + 0.1 * (b % 4);
        const double height = 1.0 + 0.5 * (b % 3);
        const SampledField f = sample(grid, [=](std::span<const double> x) { return height * cutoff((x[0] - centre) / width); });
        for (double s : {0.25, 0.5, 0.75}) {
            const SampledField spectral = fractional_laplacian(f, s);
            const SampledField quad = singular_integral_frac_lap(f, s, first, last);
            worst = std::max(worst, relative_l2(std::span(spectral.values).subspan(first, last - first),
                                                std::span(quad.values).subspan(first, last - first)));
        }
    }
    o.detail << "worst relative L2 gap " << worst << " over 10 bumps x 3 s (tolerance 1e-3)";
    o.require(worst < 1e-3, "gap");
}

// 5. Bilinear boundedness for A_D below 2 + 1/p and for A_N.
void boundedness(Outcome& o) {
    for (auto [op, s] : {std::pair{Operator::Dirichlet, 0.5}, {Operator::Dirichlet, 1.5}, {Operator::Dirichlet, 2.3},
                         {Operator::Neumann, 0.5}, {Operator::Neumann, 2.5}, {Operator::Neumann, 3.5}}) {
        BilinearConfig cfg;
        cfg.op = op;
        cfg.s = s;
        cfg.p = 2.0, cfg.p1 = 2.0, cfg.p2 = kInf, cfg.p3 = kInf, cfg.p4 = 2.0;
        cfg.family = {FamilyKind::WindowedModes, 11, 20};
        cfg.resolutions = {4096, 8192, 16384};
        cfg.half_width = 8.0;
        const RatioReport r = ratio_sweep(cfg);
        o.detail << " " << to_string(op)[0] << " s=" << s << ": " << verdict_of(r) << " spread " << r.summary.spread << ";";
        o.require(r.summary.verdict == Verdict::Bounded && r.summary.spread < kBoundedSpread && r.excluded.empty(),
                  to_string(op) + " s=" + std::to_string(s));
    }
}

// 6. Divergence at s = 2 + 1/p on the counterexample pair, with logarithmic endpoint growth.
void sharpness(Outcome& o) {
    BilinearConfig cfg;
    cfg.s = 2.5;
    cfg.p = 2.0, cfg.p1 = 2.0, cfg.p2 = kInf, cfg.p3 = kInf, cfg.p4 = 2.0;
    cfg.family = {FamilyKind::Counterexample, 1, 1};
    cfg.resolutions = {4096, 8192, 16384, 32768};
    cfg.half_width = 4.0;
    const RatioReport r = ratio_sweep(cfg);
    const EndpointGrowth g = endpoint_growth(2.0, cfg.resolutions, cfg.half_width);
    o.detail << "verdict " << verdict_of(r) << ", max ratio";
    for (double v : r.max_ratio) o.detail << " " << v;
    o.detail << "; endpoint log-fit slope " << g.log_fit.slope << " R^2 " << g.log_fit.r_squared;
    o.require(r.summary.verdict == Verdict::Diverging, "verdict");
    o.require(g.log_fit.r_squared > 0.95 && g.log_fit.slope > 0.0, "log fit");
}

// 7. Decay exponent -1/p of Lambda^{1/p} Phi_odd near the origin by both engines.
void singularity(Outcome& o) {
    const GridSpec grid = make_grid(1, 4.0, 16384, true);
    for (double p : {2.0, 4.0}) {
        const SingularityProfile prof = singularity_profile(p, grid);
        o.detail << " p=" << p << ": spectral " << prof.spectral.exponent << ", quadrature " << prof.oracle.exponent << ";";
        o.require(std::abs(prof.spectral.exponent + 1.0 / p) <= 0.05 && std::abs(prof.oracle.exponent + 1.0 / p) <= 0.05,
                  "p=" + std::to_string(p));
    }
}

// 8. Besov block floor, partial-sum growth and the limiting block shape.
void block_floor(Outcome& o) {
    const GridSpec grid = make_grid(1, 4.0, 32768, true);
    const DyadicBank bank = build_bank(grid);
    const BlockFloorReport r = besov_block_floor(2.0, grid, bank, {1.0, 2.0});
    o.detail << "top-4 min/median " << r.top_min << "/" << r.top_median;
    o.require(r.plateau && r.top_min > 0.0, "plateau");
    for (const PartialSumFit& ps : r.partial_sums) {
        o.detail << "; q=" << ps.q << " exponent " << ps.fit.slope;
        o.require(std::abs(ps.fit.slope - 1.0 / ps.q) <= 0.15, "partial sums q=" + std::to_string(ps.q));
    }
    o.detail << "; G(" << r.limit_argmax << ") = " << r.limit_value_direct << " (sine form " << r.limit_value_sine
             << "); shape error at j=" << r.shape_j << " " << r.shape_error;
    o.require(std::abs(r.limit_value_direct) > 0.0 &&
                  std::abs(r.limit_value_direct - r.limit_value_sine) < 1e-6 * std::abs(r.limit_value_sine),
              "limit");
    o.require(r.shape_error < 0.05, "shape");
}

// 9. Normal-derivative mappings.
void derivative(Outcome& o) {
    for (FamilyKind kind : {FamilyKind::Eigenmode, FamilyKind::WindowedModes, FamilyKind::Bumps, FamilyKind::Adversarial,
                            FamilyKind::Counterexample}) {
        DerivativeConfig cfg;
        cfg.mode = DerivativeMode::CrossCondition;
        cfg.family = {kind, 11, kind == FamilyKind::Counterexample ? 1u : 20u};
        const RatioReport r = derivative_mapping_sweep(cfg);
        o.detail << " cross " << to_string(kind) << ": " << verdict_of(r) << ";";
        o.require(r.summary.verdict == Verdict::Bounded, "cross " + to_string(kind));
    }
    for (double s : {0.25, 0.75}) {
        DerivativeConfig cfg;
        cfg.mode = DerivativeMode::SameCondition;
        cfg.s = s;
        cfg.family = {FamilyKind::Adversarial, 11, 20};
        const RatioReport r = derivative_mapping_sweep(cfg);
        o.detail << " same s=" << s << ": " << verdict_of(r) << ";";
        o.require(r.summary.verdict == (s < 0.5 ? Verdict::Bounded : Verdict::Diverging), "same s=" + std::to_string(s));
    }
}

// 10. Trilinear ratio bounded while the iterated bilinear path diverges.
void odd_multiplicity(Outcome& o) {
    const OddMultiplicityReport r = odd_multiplicity_contrast(TrilinearConfig{});
    o.detail << "trilinear " << verdict_of(r.trilinear) << ", iterated bilinear " << verdict_of(r.iterated_bilinear);
    o.require(r.trilinear.summary.verdict == Verdict::Bounded, "trilinear");
    o.require(r.iterated_bilinear.summary.verdict == Verdict::Diverging, "iterated");
}

// 11. Selftest, byte-identical reports and fault injection.
void determinism(Outcome& o) {
    const SelftestReport ok = run_selftest({});
    o.require(ok.passed(), "selftest");

    BilinearConfig cfg;
    cfg.family = {FamilyKind::WindowedModes, 5, 6};
    cfg.resolutions = {2048, 4096, 8192};
    auto render = [&] {
        const RatioReport r = ratio_sweep(cfg);
        const GridSpec finest = make_grid(1, cfg.half_width, cfg.resolutions.back(), true);
        return serialize(make_report({"bilinear", finest, r.bank, 5, std::nullopt}, Json::object(), to_json(r)));
    };
    const unsigned saved = thread_count();
    const std::string a = render(), b = render();
    set_thread_count(1);
    const std::string c = render();
    set_thread_count(saved);
    o.require(a == b && a == c, "byte-identical reports");

    SelftestOptions faulty;
    faulty.phi0_gain = 1.05;
    const SelftestReport bad = run_selftest(faulty);
    bool caught = false;
    for (const SelftestCheck& check : bad.checks) {
        if (check.name == "partition_of_unity" && !check.passed) caught = true;
    }
    o.require(!bad.passed() && caught, "fault injection");
    o.detail << "selftest " << (ok.passed() ? "pass" : "fail") << ", reruns " << (a == b && a == c ? "identical" : "differ")
             << ", phi_0 x1.05 " << (caught ? "caught" : "missed");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"eigenfunction exactness", eigenfunctions},
        {"odd-extension norm identity", extension_identity},
        {"partition of unity", partition},
        {"oracle equivalence", oracle},
        {"boundedness below the threshold", boundedness},
        {"sharpness at s = 2 + 1/p", sharpness},
        {"singularity profile", singularity},
        {"Besov endpoint block floor", block_floor},
        {"derivative mapping", derivative},
        {"odd-multiplicity contrast", odd_multiplicity},
        {"determinism and guards", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.str().c_str(), secs);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
