#include "halfspace/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "halfspace/errors.hpp"
#include "halfspace/extension.hpp"
#include "halfspace/parallel.hpp"
#include "halfspace/smooth.hpp"

namespace halfspace {

SpaceSpec SpaceSpec::sobolev(double s, double p, Operator op, bool homogeneous) {
    SpaceSpec spec{SpaceKind::Sobolev, homogeneous, s, p, std::nullopt, op};
    spec.validate();
    return spec;
}

SpaceSpec SpaceSpec::besov(double s, double p, double q, Operator op, bool homogeneous) {
    SpaceSpec spec{SpaceKind::Besov, homogeneous, s, p, q, op};
    spec.validate();
    return spec;
}

void SpaceSpec::validate() const {
    if (!std::isfinite(s)) throw ConfigError("regularity s must be finite");
    if (!(p >= 1.0)) throw ConfigError("integrability p must satisfy 1 <= p <= inf");
    if (kind == SpaceKind::Sobolev && q) throw ConfigError("Sobolev spaces take no summability index q");
    if (kind == SpaceKind::Besov) {
        if (!q) throw ConfigError("Besov spaces need a summability index q");
        if (!(*q >= 1.0)) throw ConfigError("summability q must satisfy 1 <= q <= inf");
    }
}

std::vector<std::string> SpaceSpec::warnings() const {
    std::vector<std::string> out;
    if (kind == SpaceKind::Sobolev && (p <= 1.0 || std::isinf(p))) {
        out.push_back("Sobolev norm evaluated at p outside (1, inf); product estimates assume 1 < p < inf");
    }
    return out;
}

std::string SpaceSpec::describe() const {
    std::ostringstream os;
    os << (kind == SpaceKind::Sobolev ? "H" : "B") << (homogeneous ? "dot" : "") << "^" << s << "_" << p;
    if (q) os << "," << *q;
    os << "(" << to_string(op) << ")";
    return os.str();
}

double lq_norm(const std::vector<double>& terms, double q) {
    double peak = 0.0;
    for (double t : terms) peak = std::max(peak, std::abs(t));
    if (std::isinf(q) || peak == 0.0) return peak;
    double sum = 0.0;
    for (double t : terms) sum += std::pow(std::abs(t) / peak, q);
    return peak * std::pow(sum, 1.0 / q);
}

double sobolev_norm(const HalfField& hf, const SpaceSpec& spec) {
    spec.validate();
    if (spec.kind != SpaceKind::Sobolev) throw ConfigError("sobolev_norm called with a Besov spec");
    const HalfField lifted = spec.homogeneous ? frac_power(hf, spec.op, spec.s) : bessel_power(hf, spec.op, spec.s);
    return lp_norm(lifted, spec.p);
}

namespace {

SampledField extension_for(const HalfField& hf, Operator op) {
    const Boundary bc = boundary_of(op);
    if (hf.bc != Boundary::None && hf.bc != bc) {
        throw ConfigError(to_string(hf.bc) + "-tagged field used with the " + to_string(op) + " Laplacian");
    }
    return extend(hf, op == Operator::Dirichlet ? Parity::Odd : Parity::Even);
}

/// Block profile of a full-grid field; `restrict_to_half` measures blocks on x_n > 0 only.
NormReport besov_profile(const SampledField& full, const SpaceSpec& spec, const DyadicBank& bank,
                         bool restrict_to_half) {
    spec.validate();
    if (spec.kind != SpaceKind::Besov) throw ConfigError("Besov evaluation called with a Sobolev spec");
    NormReport report;
    report.spec = spec;
    report.warnings = spec.warnings();

    const Spectrum spectrum(full);
    report.leak = band_leak(spectrum, bank, !spec.homogeneous);
    if (report.leak > kLeakTolerance) {
        std::ostringstream os;
        os << "spectrum leaks outside the resolved dyadic band (energy fraction " << report.leak
           << "); refine the grid or enlarge the box";
        throw NumericalError(os.str());
    }

    const Boundary bc = boundary_of(spec.op);
    auto measure = [&](const SampledField& piece) {
        return restrict_to_half ? lp_norm(restrict_half(piece, bc), spec.p) : lp_norm(piece, spec.p);
    };

    const int j_lo = spec.homogeneous ? bank.j_min : 1;
    const int count = std::max(0, bank.j_max - j_lo + 1);
    std::vector<double> terms(count);
    parallel_for(count, [&](std::size_t i) {
        const int j = j_lo + static_cast<int>(i);
        terms[i] = std::pow(2.0, spec.s * j) * measure(spectrum.filtered(bank.block(j)).to_field());
    });
    for (int i = 0; i < count; ++i) report.blocks.push_back({j_lo + i, terms[i]});
    report.value = lq_norm(terms, *spec.q);
    if (!spec.homogeneous) {
        report.low_pass = measure(spectrum.filtered(bank.low_pass()).to_field());
        report.value += *report.low_pass;
    }
    return report;
}

}  // namespace

NormReport evaluate_norm(const HalfField& hf, const SpaceSpec& spec, const DyadicBank& bank) {
    if (spec.kind == SpaceKind::Besov) return besov_profile(extension_for(hf, spec.op), spec, bank, true);
    NormReport report;
    report.spec = spec;
    report.warnings = spec.warnings();
    report.value = sobolev_norm(hf, spec);
    return report;
}

double besov_norm(const HalfField& hf, const SpaceSpec& spec, const DyadicBank& bank) {
    return besov_profile(extension_for(hf, spec.op), spec, bank, true).value;
}

TimeGrid default_time_grid(const DyadicBank& bank) {
    return TimeGrid{std::ldexp(1.0, -2 * bank.j_max), std::ldexp(1.0, -2 * bank.j_min), 16};
}

int default_semigroup_order(double s) { return static_cast<int>(std::ceil(s / 2.0)) + 1; }

double besov_norm_semigroup(const HalfField& hf, const SpaceSpec& spec, int M, const TimeGrid& grid) {
    spec.validate();
    if (spec.kind != SpaceKind::Besov) throw ConfigError("semigroup characterization needs a Besov spec");
    if (!(M > spec.s / 2.0)) throw ConfigError("semigroup order M must exceed s/2");
    double t_max = grid.t_max;
    if (!spec.homogeneous) t_max = std::min(t_max, 1.0);
    if (!(grid.t_min > 0.0) || !(t_max > grid.t_min) || grid.per_decade < 1) {
        throw ConfigError("invalid semigroup time grid");
    }

    const SampledField full = extension_for(hf, spec.op);
    const Spectrum spectrum(full);
    const Boundary bc = boundary_of(spec.op);

    const double decades = std::log10(t_max / grid.t_min);
    const int intervals = std::max(1, static_cast<int>(std::ceil(decades * grid.per_decade)));
    const double dlog = std::log(t_max / grid.t_min) / intervals;
    std::vector<double> samples(intervals + 1);
    parallel_for(samples.size(), [&](std::size_t k) {
        const double t = grid.t_min * std::exp(dlog * static_cast<double>(k));
        Multiplier m{[t, M](const Frequency& f) {
                         const double x = t * f.modulus * f.modulus;
                         return Complex(std::pow(x, M) * std::exp(-x));
                     },
                     Complex(0.0)};
        const double norm = lp_norm(restrict_half(spectrum.filtered(m).to_field(), bc), spec.p);
        samples[k] = std::pow(t, -spec.s / 2.0) * norm;
    });

    const double q = *spec.q;
    double value;
    if (std::isinf(q)) {
        value = *std::max_element(samples.begin(), samples.end());
    } else {
        double sum = 0.0;
        for (std::size_t k = 0; k < samples.size(); ++k) {
            const double w = (k == 0 || k + 1 == samples.size()) ? 0.5 : 1.0;
            sum += w * std::pow(samples[k], q);
        }
        value = std::pow(sum * dlog, 1.0 / q);
    }
    if (!spec.homogeneous) {
        Multiplier low{[](const Frequency& f) {
                           return Complex(SmoothStepTable::instance()(f.modulus * f.modulus));
                       },
                       Complex(1.0)};
        value += lp_norm(restrict_half(spectrum.filtered(low).to_field(), bc), spec.p);
    }
    return value;
}

EquivalenceReport extension_norm_equivalence(const HalfField& hf, const SpaceSpec& spec, const DyadicBank& bank) {
    EquivalenceReport r;
    const SampledField full = extension_for(hf, spec.op);
    if (spec.kind == SpaceKind::Besov) {
        r.half_value = besov_profile(full, spec, bank, true).value;
        r.full_value = besov_profile(full, spec, bank, false).value;
    } else {
        r.half_value = sobolev_norm(hf, spec);
        const SampledField lifted =
            spec.homogeneous ? fractional_laplacian(full, spec.s) : bessel_potential(full, spec.s);
        r.full_value = lp_norm(lifted, spec.p);
    }
    r.degenerate = r.full_value == 0.0;
    r.ratio = r.degenerate ? 0.0 : r.half_value / r.full_value;
    return r;
}

}  // namespace halfspace
