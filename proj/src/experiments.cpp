#include "halfspace/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "halfspace/errors.hpp"
#include "halfspace/extension.hpp"
#include "halfspace/parallel.hpp"
#include "halfspace/singular_integral.hpp"
#include "halfspace/smooth.hpp"

namespace halfspace {

namespace {

constexpr double kHolderTolerance = 1e-12;

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

void check_exponent(double p, const char* name) {
    if (!(p >= 1.0)) throw ConfigError(std::string("exponent ") + name + " must satisfy 1 <= p <= inf");
}

void check_resolutions(const std::vector<std::size_t>& resolutions) {
    if (resolutions.empty()) throw ConfigError("at least one resolution is required");
    for (std::size_t k = 1; k < resolutions.size(); ++k) {
        if (resolutions[k] <= resolutions[k - 1]) throw ConfigError("resolutions must be strictly increasing");
    }
}

void check_tag(const HalfField& f, Operator op) {
    if (f.bc != Boundary::None && f.bc != boundary_of(op)) {
        throw ConfigError(to_string(f.bc) + "-tagged field used with the " + to_string(op) + " Laplacian");
    }
}

HalfField product(const HalfField& a, const HalfField& b, Boundary bc) {
    if (!(a.grid == b.grid)) throw ConfigError("factors live on different grids");
    HalfField out{a.grid, std::vector<double>(a.values.size()), bc};
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = a.values[i] * b.values[i];
    return out;
}

double smoothness_norm(const HalfField& f, double s, double p, Operator op, SpaceKind kind,
                       const std::optional<double>& q, const DyadicBank& bank) {
    if (kind == SpaceKind::Sobolev) return sobolev_norm(f, SpaceSpec::sobolev(s, p, op));
    return besov_norm(f, SpaceSpec::besov(s, p, *q, op), bank);
}

RatioValue make_ratio(double lhs, double rhs) {
    RatioValue r{lhs, rhs, 0.0, false};
    if (!(rhs > 0.0) || !std::isfinite(rhs) || !std::isfinite(lhs)) {
        r.degenerate = true;
    } else {
        r.ratio = lhs / rhs;
    }
    return r;
}

/// Runs `evaluate(member, grid)` over members x resolutions and assembles a report.
template <class Evaluate>
RatioReport sweep(const std::string& name, std::size_t members, const std::vector<std::string>& labels,
                  const std::vector<std::size_t>& resolutions, int dim, double half_width, Evaluate evaluate) {
    check_resolutions(resolutions);
    RatioReport report;
    report.experiment = name;
    report.resolutions = resolutions;
    std::vector<GridSpec> grids;
    for (std::size_t N : resolutions) grids.push_back(make_grid(dim, half_width, N, true));
    report.bank = build_bank(grids.back());

    const std::size_t items = members * resolutions.size();
    std::vector<RatioEntry> entries(items);
    parallel_for(items, [&](std::size_t w) {
        const std::size_t r = w / members;
        const std::size_t m = w % members;
        entries[w] = RatioEntry{m, labels[m], resolutions[r], evaluate(m, grids[r])};
    });

    report.max_ratio.assign(resolutions.size(), 0.0);
    std::vector<bool> seen(resolutions.size(), false);
    for (std::size_t w = 0; w < items; ++w) {
        const auto& e = entries[w];
        const std::size_t r = w / members;
        if (e.value.degenerate) {
            report.excluded.push_back(e.label + "@N=" + std::to_string(e.resolution));
            continue;
        }
        report.max_ratio[r] = seen[r] ? std::max(report.max_ratio[r], e.value.ratio) : e.value.ratio;
        seen[r] = true;
    }
    report.entries = std::move(entries);
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        report.summary.verdict = Verdict::Inconclusive;
        report.summary.reason = "every member was degenerate at some resolution";
        return report;
    }
    std::vector<std::vector<double>> series(members);
    for (std::size_t w = 0; w < items; ++w) {
        const auto& e = report.entries[w];
        if (!e.value.degenerate) series[w % members].push_back(e.value.ratio);
    }
    report.summary = classify_growth(resolutions, report.max_ratio, series);
    return report;
}

std::vector<std::string> labels_of(const std::vector<TestFunction>& fns, std::size_t stride) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i + stride <= fns.size(); i += stride) {
        std::string label = fns[i].label;
        for (std::size_t k = 1; k < stride; ++k) label += "*" + fns[i + k].label;
        out.push_back(label);
    }
    return out;
}

/// Family members grouped in tuples; the counterexample family repeats its single member.
std::vector<TestFunction> tuple_family(const FamilySpec& spec, std::size_t arity, int dim, Operator op,
                                       double half_width) {
    if (spec.kind == FamilyKind::Counterexample) {
        auto base = make_family(FamilySpec{spec.kind, spec.seed, 1}, dim, op, half_width);
        return std::vector<TestFunction>(arity, base.front());
    }
    FamilySpec expanded = spec;
    expanded.members = spec.members * arity;
    return make_family(expanded, dim, op, half_width);
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Bounded: return "bounded";
        case Verdict::Diverging: return "diverging";
        case Verdict::Inconclusive: break;
    }
    return "inconclusive";
}

void BilinearConfig::validate() const {
    for (auto [v, n] : {std::pair{p, "p"}, {p1, "p1"}, {p2, "p2"}, {p3, "p3"}, {p4, "p4"}}) check_exponent(v, n);
    if (std::abs(inv(p) - inv(p1) - inv(p2)) > kHolderTolerance ||
        std::abs(inv(p) - inv(p3) - inv(p4)) > kHolderTolerance) {
        throw ConfigError("exponents violate 1/p = 1/p1 + 1/p2 = 1/p3 + 1/p4");
    }
    if (!std::isfinite(s)) throw ConfigError("regularity s must be finite");
    if (kind == SpaceKind::Besov && (!q || !(*q >= 1.0))) throw ConfigError("Besov ratios need q >= 1");
    if (kind == SpaceKind::Sobolev && q) throw ConfigError("Sobolev ratios take no q");
    check_resolutions(resolutions);
}

void TrilinearConfig::validate() const {
    check_exponent(p, "p");
    for (double e : exponents) check_exponent(e, "p_i");
    for (int t = 0; t < 3; ++t) {
        const double sum = inv(exponents[3 * t]) + inv(exponents[3 * t + 1]) + inv(exponents[3 * t + 2]);
        if (std::abs(inv(p) - sum) > kHolderTolerance) {
            throw ConfigError("exponents violate 1/p = 1/p1 + 1/p2 + 1/p3 (and the other two triples)");
        }
    }
    if (!std::isfinite(s)) throw ConfigError("regularity s must be finite");
    check_resolutions(resolutions);
}

namespace {

struct SeriesGrowth {
    bool monotone = false;
    std::optional<LinearFit> loglog;
    std::optional<LinearFit> log;
    std::optional<double> min_increment_ratio;
    bool significant = false;
    bool contracting = false;
};

SeriesGrowth analyse_series(const std::vector<std::size_t>& resolutions, const std::vector<double>& r) {
    SeriesGrowth g;
    const std::size_t n = r.size();
    g.monotone = n >= 2;
    for (std::size_t k = 1; k < n; ++k) {
        if (!(r[k] > r[k - 1] * (1.0 + kGrowthNoise))) g.monotone = false;
    }
    const bool positive = std::all_of(r.begin(), r.end(), [](double v) { return v > 0.0; });
    if (n >= 3 && positive) {
        std::vector<double> x1, x2, y;
        for (std::size_t k = 0; k < n; ++k) {
            const double N = static_cast<double>(resolutions[k]);
            x1.push_back(std::log(std::log(N)));
            x2.push_back(std::log(N));
            y.push_back(std::log(r[k]));
        }
        g.loglog = fit_line(x1, y);
        g.log = fit_line(x2, y);
        g.significant = g.loglog->slope > 0.0 && g.loglog->slope > 3.0 * g.loglog->slope_stderr;
    }
    if (g.monotone && n >= 3) {
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t k = 2; k < n; ++k) worst = std::min(worst, (r[k] - r[k - 1]) / (r[k - 1] - r[k - 2]));
        g.min_increment_ratio = worst;
        g.contracting = worst <= kGeometricIncrementRatio;
    }
    return g;
}

bool divergent(const SeriesGrowth& g, std::size_t n) { return n >= 3 && g.monotone && g.significant && !g.contracting; }

}  // namespace

VerdictDetail classify_growth(const std::vector<std::size_t>& resolutions, const std::vector<double>& r,
                              const std::vector<std::vector<double>>& member_series) {
    VerdictDetail d;
    const std::size_t n = r.size();
    if (n != resolutions.size() || n == 0) throw ConfigError("ratio sequence does not match the resolutions");
    const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
    d.spread = *lo > 0.0 ? (*hi - *lo) / *lo : std::numeric_limits<double>::infinity();
    bool non_increasing = n >= 2;
    for (std::size_t k = 1; k < n; ++k) {
        if (r[k] > r[k - 1] * (1.0 + kGrowthNoise)) non_increasing = false;
    }
    const SeriesGrowth envelope = analyse_series(resolutions, r);
    d.monotone_increasing = envelope.monotone;
    d.loglog_fit = envelope.loglog;
    d.log_fit = envelope.log;
    d.min_increment_ratio = envelope.min_increment_ratio;
    if (member_series.empty()) {
        d.diverging_members = divergent(envelope, n) ? 1 : 0;
    } else {
        // The supremum over a finite family is governed by whichever member attains it at the
        // finest resolution; growth of lower members does not move it.
        for (const auto& series : member_series) {
            if (series.size() != n || series.back() < r.back() * (1.0 - kGrowthNoise)) continue;
            if (divergent(analyse_series(resolutions, series), n)) ++d.diverging_members;
        }
    }

    std::ostringstream why;
    if (n >= 3 && envelope.monotone && envelope.significant && d.diverging_members > 0) {
        d.verdict = Verdict::Diverging;
        why << "monotone growth over " << n << " resolutions, log-log slope " << d.loglog_fit->slope << " > 3 x "
            << d.loglog_fit->slope_stderr << ", " << d.diverging_members
            << " member(s) growing without geometric contraction";
    } else if (n >= 2 && d.spread < kBoundedSpread) {
        d.verdict = Verdict::Bounded;
        why << "max ratio varies by " << 100.0 * d.spread << "% across resolutions";
    } else if (non_increasing) {
        d.verdict = Verdict::Bounded;
        why << "max ratio does not increase under refinement";
    } else {
        d.verdict = Verdict::Inconclusive;
        why << "max ratio varies by " << 100.0 * d.spread << "%";
        if (envelope.monotone && d.diverging_members == 0) why << "; every member's growth contracts geometrically";
        if (!envelope.monotone) why << "; growth not monotone";
    }
    d.reason = why.str();
    return d;
}

RatioValue bilinear_ratio(const HalfField& f, const HalfField& g, const BilinearConfig& cfg, const DyadicBank* bank) {
    cfg.validate();
    check_tag(f, cfg.op);
    check_tag(g, cfg.op);
    std::optional<DyadicBank> local;
    if (!bank && cfg.kind == SpaceKind::Besov) bank = &local.emplace(build_bank(f.grid));
    const DyadicBank& b = bank ? *bank : DyadicBank{};
    const HalfField fg = product(f, g, boundary_of(cfg.op));
    const double lhs = smoothness_norm(fg, cfg.s, cfg.p, cfg.op, cfg.kind, cfg.q, b);
    const double rhs = smoothness_norm(f, cfg.s, cfg.p1, cfg.op, cfg.kind, cfg.q, b) * lp_norm(g, cfg.p2) +
                       lp_norm(f, cfg.p3) * smoothness_norm(g, cfg.s, cfg.p4, cfg.op, cfg.kind, cfg.q, b);
    return make_ratio(lhs, rhs);
}

RatioReport ratio_sweep(const BilinearConfig& cfg) {
    cfg.validate();
    const auto fns = tuple_family(cfg.family, 2, cfg.dim, cfg.op, cfg.half_width);
    const std::size_t pairs = fns.size() / 2;
    const Boundary bc = boundary_of(cfg.op);
    return sweep("bilinear", pairs, labels_of(fns, 2), cfg.resolutions, cfg.dim, cfg.half_width,
                 [&](std::size_t m, const GridSpec& grid) {
                     const HalfField f = sample_half(grid, fns[2 * m].expr, bc);
                     const HalfField g = sample_half(grid, fns[2 * m + 1].expr, bc);
                     std::optional<DyadicBank> bank;
                     if (cfg.kind == SpaceKind::Besov) bank = build_bank(grid);
                     return bilinear_ratio(f, g, cfg, bank ? &*bank : nullptr);
                 });
}

RatioValue trilinear_ratio(const HalfField& f, const HalfField& g, const HalfField& h, const TrilinearConfig& cfg) {
    cfg.validate();
    for (const auto* x : {&f, &g, &h}) check_tag(*x, cfg.op);
    const Boundary bc = boundary_of(cfg.op);
    const HalfField fgh = product(product(f, g, bc), h, bc);
    const auto& e = cfg.exponents;
    auto S = [&](const HalfField& x, double p) { return sobolev_norm(x, SpaceSpec::sobolev(cfg.s, p, cfg.op)); };
    const double lhs = S(fgh, cfg.p);
    const double rhs = S(f, e[0]) * lp_norm(g, e[1]) * lp_norm(h, e[2]) +
                       lp_norm(f, e[3]) * S(g, e[4]) * lp_norm(h, e[5]) +
                       lp_norm(f, e[6]) * lp_norm(g, e[7]) * S(h, e[8]);
    return make_ratio(lhs, rhs);
}

RatioReport trilinear_sweep(const TrilinearConfig& cfg) {
    cfg.validate();
    const auto fns = tuple_family(cfg.family, 3, cfg.dim, cfg.op, cfg.half_width);
    const Boundary bc = boundary_of(cfg.op);
    return sweep("trilinear", fns.size() / 3, labels_of(fns, 3), cfg.resolutions, cfg.dim, cfg.half_width,
                 [&](std::size_t m, const GridSpec& grid) {
                     return trilinear_ratio(sample_half(grid, fns[3 * m].expr, bc),
                                            sample_half(grid, fns[3 * m + 1].expr, bc),
                                            sample_half(grid, fns[3 * m + 2].expr, bc), cfg);
                 });
}

OddMultiplicityReport odd_multiplicity_contrast(const TrilinearConfig& cfg) {
    OddMultiplicityReport out;
    out.trilinear = trilinear_sweep(cfg);
    BilinearConfig bi;
    bi.s = cfg.s;
    bi.p = cfg.p;
    bi.p1 = cfg.p;
    bi.p2 = kInf;
    bi.p3 = kInf;
    bi.p4 = cfg.p;
    bi.op = cfg.op;
    bi.family = cfg.family;
    bi.resolutions = cfg.resolutions;
    bi.dim = cfg.dim;
    bi.half_width = cfg.half_width;
    out.iterated_bilinear = ratio_sweep(bi);
    out.iterated_bilinear.experiment = "iterated_bilinear";
    return out;
}

std::pair<SampledField, SampledField> paraproduct_split(const SampledField& F, const SampledField& G,
                                                        const DyadicBank& bank) {
    if (!(F.grid == G.grid)) throw ConfigError("paraproduct factors live on different grids");
    const Spectrum sf(F), sg(G);
    for (const auto* s : {&sf, &sg}) {
        const double leak = band_leak(*s, bank, false);
        if (leak > kLeakTolerance) throw NumericalError("paraproduct factor leaks outside the resolved band");
    }
    const int count = bank.j_max - bank.j_min + 1;
    std::vector<SampledField> fb(count), gb(count);
    parallel_for(count, [&](std::size_t i) {
        const Multiplier m = bank.block(bank.j_min + static_cast<int>(i));
        fb[i] = sf.filtered(m).to_field();
        gb[i] = sg.filtered(m).to_field();
    });
    const double mean_f = mean_value(F);
    const double mean_g = mean_value(G);
    const std::size_t n = F.values.size();

    // Piece I: F_k against the partial sum of G below k-3 (the mean of G counts as lowest).
    SampledField piece1{F.grid, std::vector<double>(n, 0.0)};
    std::vector<double> low(n, mean_g);
    for (int k = 0; k < count; ++k) {
        if (k - 3 >= 0) {
            for (std::size_t i = 0; i < n; ++i) low[i] += gb[k - 3].values[i];
        }
        for (std::size_t i = 0; i < n; ++i) piece1.values[i] += fb[k].values[i] * low[i];
    }
    // Piece II: G_l against F below l+3, plus the mean of G against the mean of F.
    SampledField piece2{F.grid, std::vector<double>(n, mean_f * mean_g)};
    std::vector<double> below(n, mean_f);
    for (int k = 0; k < std::min(2, count); ++k) {
        for (std::size_t i = 0; i < n; ++i) below[i] += fb[k].values[i];
    }
    for (int l = 0; l < count; ++l) {
        if (l + 2 < count) {
            for (std::size_t i = 0; i < n; ++i) below[i] += fb[l + 2].values[i];
        }
        for (std::size_t i = 0; i < n; ++i) piece2.values[i] += gb[l].values[i] * below[i];
    }
    return {std::move(piece1), std::move(piece2)};
}

LeibnizTerms leibniz_decomposition(const HalfField& f, const HalfField& g) {
    if (f.bc != Boundary::Dirichlet || g.bc != Boundary::Dirichlet) {
        throw ConfigError("Leibniz decomposition expects Dirichlet-tagged factors");
    }
    if (!(f.grid == g.grid)) throw ConfigError("factors live on different grids");
    const GridSpec& grid = f.grid;
    const SampledField fo = odd_extend(f);
    const SampledField go = odd_extend(g);
    const Boundary D = Boundary::Dirichlet;

    LeibnizTerms t;
    t.first = product(restrict_half(fractional_laplacian(fo, 2.0), D), g, D);
    t.third = product(f, restrict_half(fractional_laplacian(go, 2.0), D), D);
    t.gradient = HalfField{grid, std::vector<double>(f.values.size(), 0.0), Boundary::None};
    for (int d = 0; d < grid.dim; ++d) {
        const HalfField df = restrict_half(partial_derivative(fo, d), Boundary::None);
        const HalfField dg = restrict_half(partial_derivative(go, d), Boundary::None);
        for (std::size_t i = 0; i < df.values.size(); ++i) t.gradient.values[i] += df.values[i] * dg.values[i];
    }
    // f_odd g_odd is the even extension of fg and is as smooth as the factors, so Lambda^2
    // of it agrees with -Laplacian(fg) on x_n > 0 without the jump of (fg)_odd in second derivatives.
    SampledField even_product = fo;
    for (std::size_t i = 0; i < even_product.values.size(); ++i) even_product.values[i] *= go.values[i];
    t.direct = restrict_half(fractional_laplacian(even_product, 2.0), D);

    double diff = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < t.direct.values.size(); ++i) {
        const double combo = t.first.values[i] - 2.0 * t.gradient.values[i] + t.third.values[i];
        diff += (t.direct.values[i] - combo) * (t.direct.values[i] - combo);
        ref += t.direct.values[i] * t.direct.values[i];
    }
    t.identity_residual = ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff);

    const std::size_t half = grid.points / 2;
    double peak = 0.0;
    for (double v : t.gradient.values) peak = std::max(peak, std::abs(v));
    for (std::size_t r = 0; r < t.gradient.values.size() / half; ++r) {
        const double v0 = t.gradient.values[r * half];
        const double v1 = t.gradient.values[r * half + 1];
        t.gradient_trace = std::max(t.gradient_trace, std::abs(1.5 * v0 - 0.5 * v1));
    }
    t.trace_flagged = peak > 0.0 && t.gradient_trace > 1e-6 * peak;
    return t;
}

std::pair<HalfField, HalfField> counterexample_fields(const GridSpec& grid) {
    if (!grid.staggered) throw ConfigError("counterexample fields need a staggered grid");
    if (grid.half_width < 2.0) throw ConfigError("counterexample support [-1,1] must lie in the central half (L >= 2)");
    HalfField f = sample_half(grid, counterexample_profile, Boundary::Dirichlet);
    return {f, f};
}

SampledField counterexample_jump(const GridSpec& grid) {
    if (grid.dim != 1) throw ConfigError("the jump profile is one-dimensional");
    if (!grid.staggered) throw ConfigError("the jump profile needs a staggered grid");
    if (grid.half_width < 2.0) throw ConfigError("counterexample support [-1,1] must lie in the central half (L >= 2)");
    return sample(grid, [](std::span<const double> x) {
        const double c = cutoff(x[0]);
        return (x[0] > 0.0 ? 1.0 : -1.0) * c * c;
    });
}

namespace {

ProfileFit fit_profile(const std::vector<double>& x, const std::vector<double>& v, double s) {
    std::vector<double> lx, lv;
    ProfileFit out;
    out.lower_bound = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (v[i] == 0.0) throw NumericalError("profile vanishes inside the fit window");
        lx.push_back(std::log(x[i]));
        lv.push_back(std::log(std::abs(v[i])));
        out.lower_bound = std::min(out.lower_bound, std::abs(v[i]) * std::pow(x[i], s));
    }
    const LinearFit fit = fit_line(lx, lv);
    out.exponent = fit.slope;
    out.constant = std::exp(fit.intercept);
    out.r_squared = fit.r_squared;
    return out;
}

}  // namespace

SingularityProfile singularity_profile(double p, const GridSpec& grid, double delta) {
    if (!(p > 1.0) || std::isinf(p)) {
        throw ConfigError("singularity profile needs 1 < p < inf so that s = 1/p lies in (0, 1)");
    }
    SingularityProfile out;
    out.p = p;
    out.s = 1.0 / p;
    out.delta = delta;
    const double h = grid.spacing();
    out.x_low = 8.0 * h;
    if (!(delta > out.x_low)) throw ConfigError("fit window [8h, delta] is empty; refine the grid");

    const SampledField phi = counterexample_jump(grid);
    const SampledField spectral = fractional_laplacian(phi, out.s);

    const std::size_t N = grid.points;
    const std::size_t half = N / 2;
    std::size_t span = 0;
    while (half + span < N && grid.coordinate(half + span, 0) <= delta) ++span;
    const SampledField oracle = singular_integral_frac_lap(phi, out.s, half - span, half + span);

    double peak = 0.0, odd_spec = 0.0, odd_oracle = 0.0, peak_oracle = 0.0;
    for (std::size_t k = 0; k < half; ++k) {
        peak = std::max(peak, std::abs(spectral.values[k]));
        odd_spec = std::max(odd_spec, std::abs(spectral.values[k] + spectral.values[N - 1 - k]));
    }
    for (std::size_t k = 0; k < span; ++k) {
        peak_oracle = std::max(peak_oracle, std::abs(oracle.values[half + k]));
        odd_oracle = std::max(odd_oracle, std::abs(oracle.values[half + k] + oracle.values[half - 1 - k]));
    }
    out.antisymmetry = std::max(odd_spec / peak, odd_oracle / peak_oracle);

    std::vector<double> xs, vs, vo;
    for (std::size_t k = 0; k < span; ++k) {
        const double x = grid.coordinate(half + k, 0);
        if (x < out.x_low) continue;
        xs.push_back(x);
        vs.push_back(spectral.values[half + k]);
        vo.push_back(oracle.values[half + k]);
        out.samples.push_back({x, vs.back(), vo.back()});
        out.engine_mismatch = std::max(out.engine_mismatch, std::abs(vs.back() - vo.back()) / std::abs(vo.back()));
    }
    if (xs.size() < 3) throw ConfigError("fit window holds fewer than three samples; refine the grid");
    if (out.engine_mismatch > 0.05) {
        std::ostringstream os;
        os << "spectral and singular-integral engines disagree by " << 100.0 * out.engine_mismatch
           << "% in the fit window (aliasing suspected)";
        throw NumericalError(os.str());
    }
    out.spectral = fit_profile(xs, vs, out.s);
    out.oracle = fit_profile(xs, vo, out.s);
    return out;
}

namespace {

/// Gauss-Legendre nodes on the support [1/2, 2] of phi_0, weights premultiplied by phi_0.
struct Phi0Quadrature {
    std::vector<double> xi, w;

    static const Phi0Quadrature& instance() {
        static const Phi0Quadrature q;
        return q;
    }

private:
    Phi0Quadrature() {
        static constexpr double nodes[8] = {0.019855071751231856, 0.10166676129318664, 0.2372337950418355,
                                            0.4082826787521751,   0.5917173212478249,  0.7627662049581645,
                                            0.8983332387068134,   0.9801449282487681};
        static constexpr double weights[8] = {0.05061426814518813, 0.11119051722668724, 0.15685332293894364,
                                              0.18134189168918100, 0.18134189168918100, 0.15685332293894364,
                                              0.11119051722668724, 0.05061426814518813};
        DyadicBank bank;
        constexpr int panels = 192;
        const double width = 1.5 / panels;
        for (int p = 0; p < panels; ++p) {
            for (int g = 0; g < 8; ++g) {
                const double x = 0.5 + width * (p + nodes[g]);
                xi.push_back(x);
                w.push_back(width * weights[g] * bank.phi0(x));
            }
        }
    }
};

}  // namespace

double phi0_kernel(double z) {
    const auto& q = Phi0Quadrature::instance();
    double sum = 0.0;
    for (std::size_t i = 0; i < q.xi.size(); ++i) sum += q.w[i] * std::cos(z * q.xi[i]);
    return sum / M_PI;
}

double limiting_block_sine(double x) {
    const auto& q = Phi0Quadrature::instance();
    double sum = 0.0;
    for (std::size_t i = 0; i < q.xi.size(); ++i) sum += q.w[i] * std::sin(x * q.xi[i]) / q.xi[i];
    return 2.0 * sum / M_PI;
}

double limiting_block_direct(double x, double y_max) {
    static constexpr double nodes[8] = {0.019855071751231856, 0.10166676129318664, 0.2372337950418355,
                                        0.4082826787521751,   0.5917173212478249,  0.7627662049581645,
                                        0.8983332387068134,   0.9801449282487681};
    static constexpr double weights[8] = {0.05061426814518813, 0.11119051722668724, 0.15685332293894364,
                                          0.18134189168918100, 0.18134189168918100, 0.15685332293894364,
                                          0.11119051722668724, 0.05061426814518813};
    constexpr double width = 0.25;
    const int panels = static_cast<int>(std::ceil(y_max / width));
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        for (int g = 0; g < 8; ++g) {
            const double y = width * (p + nodes[g]);
            sum += width * weights[g] * (phi0_kernel(x - y) - phi0_kernel(x + y));
        }
    }
    return sum;
}

namespace {

/// The limiting shape is below 1e-7 beyond this argument, and the phi_0 quadrature
/// stops resolving sin(y xi) well past it.
constexpr double kLimitRange = 200.0;

}  // namespace

BlockFloorReport besov_block_floor(double p, const GridSpec& grid, const DyadicBank& bank,
                                   const std::vector<double>& q_values) {
    if (!(p >= 1.0) || std::isinf(p)) throw ConfigError("block floor needs 1 <= p < inf");
    const int octaves = bank.j_max - std::max(bank.j_min, 0);
    if (octaves < 6) throw ConfigError("block floor needs at least six resolved octaves above the support scale");
    BlockFloorReport out;
    out.p = p;
    const SampledField phi = counterexample_jump(grid);
    const std::vector<SampledField> blocks = dyadic_blocks(phi, bank);
    std::vector<double> b;
    for (int j = bank.j_min; j <= bank.j_max; ++j) {
        const SampledField& blk = blocks[j - bank.j_min];
        out.rows.push_back({j, std::pow(2.0, j / p) * lp_norm(blk, p), lp_norm(blk, kInf)});
        b.push_back(out.rows.back().weighted);
    }
    const std::vector<double> top(b.end() - 4, b.end());
    out.top_min = *std::min_element(top.begin(), top.end());
    out.top_median = median(top);
    out.plateau = out.top_min > 0.5 * out.top_median;

    std::size_t start = b.size() - 4;
    for (std::size_t i = 0; i < b.size(); ++i) {
        bool flat = true;
        for (std::size_t k = i; k < b.size(); ++k) flat = flat && std::abs(b[k] - out.top_median) <= 0.1 * out.top_median;
        if (flat) {
            start = i;
            break;
        }
    }
    out.plateau_start = bank.j_min + static_cast<int>(start);
    for (double q : q_values) {
        PartialSumFit ps;
        ps.q = q;
        std::vector<double> lj, ls;
        for (std::size_t J = 1; start + J <= b.size(); ++J) {
            const std::vector<double> head(b.begin() + start, b.begin() + start + J);
            ps.sums.push_back(lq_norm(head, q));
            lj.push_back(std::log(static_cast<double>(J)));
            ls.push_back(std::log(ps.sums.back()));
        }
        if (lj.size() >= 2) ps.fit = fit_line(lj, ls);
        out.partial_sums.push_back(std::move(ps));
    }

    // Argmax of the limiting shape: coarse scan, then golden-section refinement.
    double best_x = 0.0, best = -1.0;
    for (double x = 0.02; x <= 8.0; x += 0.02) {
        const double v = limiting_block_sine(x);
        if (v > best) best = v, best_x = x;
    }
    double a = best_x - 0.02, c = best_x + 0.02;
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 60; ++it) {
        const double x1 = c - ratio * (c - a), x2 = a + ratio * (c - a);
        if (limiting_block_sine(x1) > limiting_block_sine(x2)) c = x2;
        else a = x1;
    }
    out.limit_argmax = 0.5 * (a + c);
    out.limit_value_sine = limiting_block_sine(out.limit_argmax);
    out.limit_value_direct = limiting_block_direct(out.limit_argmax);

    // Shape comparison at the largest block whose support stays below half the Nyquist frequency.
    out.shape_j = bank.j_min;
    for (int j = bank.j_min; j <= bank.j_max; ++j) {
        if (std::ldexp(1.0, j + 1) <= 0.5 * grid.nyquist()) out.shape_j = j;
    }
    const SampledField& blk = blocks[out.shape_j - bank.j_min];
    const double scale = std::ldexp(1.0, out.shape_j);
    double err = 0.0, ref = 0.0;
    for (std::size_t k = grid.points / 2; k < grid.points; ++k) {
        const double x = grid.coordinate(k, 0);
        const double y = scale * x;
        const double g = y <= kLimitRange ? limiting_block_sine(y) : 0.0;
        err = std::max(err, std::abs(blk.values[k] - g));
        ref = std::max(ref, std::abs(g));
    }
    out.shape_error = err / ref;
    return out;
}

EndpointGrowth endpoint_growth(double p, const std::vector<std::size_t>& resolutions, double half_width,
                               double delta) {
    if (!(p > 1.0) || std::isinf(p)) throw ConfigError("endpoint growth needs 1 < p < inf");
    check_resolutions(resolutions);
    if (resolutions.size() < 2) throw ConfigError("endpoint growth needs at least two resolutions");
    EndpointGrowth out;
    out.resolutions = resolutions;
    out.values.resize(resolutions.size());
    parallel_for(resolutions.size(), [&](std::size_t r) {
        const GridSpec grid = make_grid(1, half_width, resolutions[r], true);
        const SampledField lifted = fractional_laplacian(counterexample_jump(grid), 1.0 / p);
        double sum = 0.0;
        for (std::size_t k = grid.points / 2; k < grid.points; ++k) {
            if (grid.coordinate(k, 0) > delta) break;
            sum += std::pow(std::abs(lifted.values[k]), p);
        }
        out.values[r] = sum * grid.spacing();
    });
    std::vector<double> x;
    for (std::size_t N : resolutions) x.push_back(std::log(static_cast<double>(N)));
    out.log_fit = fit_line(x, out.values);
    return out;
}

RatioReport derivative_mapping_sweep(const DerivativeConfig& cfg) {
    check_exponent(cfg.p, "p");
    const auto fns = make_family(cfg.family, cfg.dim, cfg.op, cfg.half_width);
    const Boundary bc = boundary_of(cfg.op);
    const Operator other = cfg.op == Operator::Dirichlet ? Operator::Neumann : Operator::Dirichlet;
    const bool cross = cfg.mode == DerivativeMode::CrossCondition;
    RatioReport report = sweep(cross ? "derivative_cross" : "derivative_same", fns.size(), labels_of(fns, 1),
                               cfg.resolutions, cfg.dim, cfg.half_width, [&](std::size_t m, const GridSpec& grid) {
                                   const HalfField f = sample_half(grid, fns[m].expr, bc);
                                   const HalfField df = normal_derivative(f);
                                   if (cross) {
                                       return make_ratio(sobolev_norm(df, SpaceSpec::sobolev(cfg.s - 1.0, cfg.p, other)),
                                                         sobolev_norm(f, SpaceSpec::sobolev(cfg.s, cfg.p, cfg.op)));
                                   }
                                   return make_ratio(
                                       sobolev_norm(with_boundary(df, bc), SpaceSpec::sobolev(cfg.s, cfg.p, cfg.op)),
                                       sobolev_norm(f, SpaceSpec::sobolev(cfg.s + 1.0, cfg.p, cfg.op)));
                               });
    return report;
}

}  // namespace halfspace
