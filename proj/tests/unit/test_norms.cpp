#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "halfspace/errors.hpp"
#include "halfspace/families.hpp"
#include "halfspace/halfspace_ops.hpp"
#include "halfspace/norms.hpp"
#include "halfspace/smooth.hpp"
#include "helpers.hpp"
#include "oracle_values.hpp"

using namespace halfspace;

namespace {

constexpr double kPi = std::numbers::pi;
const GridSpec kGrid = make_grid(1, 8.0, 4096, true);
const DyadicBank kBank = build_bank(kGrid);

HalfField sine(const GridSpec& g, double k) {
    return sample_half(g, [k](std::span<const double> x) { return std::sin(k * x[0]); }, Boundary::Dirichlet);
}

HalfField cosine(const GridSpec& g, double k) {
    return sample_half(g, [k](std::span<const double> x) { return std::cos(k * x[0]); }, Boundary::Neumann);
}

/// Sine series over modes [lo, hi] with random signs and |a_k|^2 k^{2s} ~ 1/k, i.e. equal
/// H^s energy per octave.
HalfField octave_flat_series(const GridSpec& g, int lo, int hi, double s, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin;
    std::vector<std::pair<double, double>> terms;
    for (int m = lo; m <= hi; ++m) {
        const double k = kPi * m / g.half_width;
        terms.emplace_back(k, (coin(rng) ? 1.0 : -1.0) * std::pow(k, -s - 0.5));
    }
    return sample_half(
        g,
        [terms](std::span<const double> x) {
            double v = 0.0;
            for (const auto& [k, a] : terms) v += a * std::sin(k * x[0]);
            return v;
        },
        Boundary::Dirichlet);
}

std::vector<HalfField> bump_corpus(const GridSpec& g, std::size_t members) {
    std::vector<HalfField> out;
    for (const auto& m : make_family({FamilyKind::Bumps, 21, members}, 1, Operator::Dirichlet, g.half_width)) {
        out.push_back(sample_half(g, m.expr, Boundary::Dirichlet));
    }
    return out;
}

HalfField scaled(HalfField f, double c) {
    for (double& v : f.values) v *= c;
    return f;
}

}  // namespace

TEST_CASE("lq_norm") {
    const std::vector<double> t{3.0, -4.0};
    CHECK(lq_norm(t, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(lq_norm(t, 1.0) == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(lq_norm(t, kInf) == 4.0);
    CHECK(lq_norm({0.0, 0.0}, 2.0) == 0.0);
}

TEST_CASE("space spec validation") {
    CHECK_NOTHROW(SpaceSpec::sobolev(1.0, 2.0, Operator::Dirichlet).validate());
    CHECK_THROWS_AS(SpaceSpec::sobolev(1.0, 0.5, Operator::Dirichlet).validate(), ConfigError);
    CHECK_THROWS_AS(SpaceSpec::besov(1.0, 2.0, 0.5, Operator::Dirichlet).validate(), ConfigError);
    SpaceSpec bad = SpaceSpec::sobolev(1.0, 2.0, Operator::Dirichlet);
    bad.q = 2.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    CHECK_FALSE(SpaceSpec::sobolev(1.0, 1.0, Operator::Dirichlet).warnings().empty());
}

TEST_CASE("Sobolev norm of a single mode") {
    const double k = kPi * 12 / kGrid.half_width;
    const HalfField f = sine(kGrid, k);
    for (double s : {0.0, 0.5, 1.0, 2.5}) {
        for (double p : {1.0, 2.0, 4.0}) {
            const double expected = std::pow(k, s) * lp_norm(f, p);
            CHECK(sobolev_norm(f, SpaceSpec::sobolev(s, p, Operator::Dirichlet)) ==
                  doctest::Approx(expected).epsilon(1e-11));
        }
    }
    const HalfField g = cosine(kGrid, k);
    CHECK(sobolev_norm(g, SpaceSpec::sobolev(1.5, 2.0, Operator::Neumann)) ==
          doctest::Approx(std::pow(k, 1.5) * lp_norm(g, 2.0)).epsilon(1e-11));
    CHECK_THROWS_AS(sobolev_norm(g, SpaceSpec::sobolev(1.0, 2.0, Operator::Dirichlet)), ConfigError);
}

TEST_CASE("Besov norm of a single mode uses at most two blocks") {
    for (int m : {3, 12, 40}) {
        const double k = kPi * m / kGrid.half_width;
        const HalfField f = sine(kGrid, k);
        for (double s : {0.5, 1.0, 2.0}) {
            for (double p : {1.0, 2.0, 4.0}) {
                for (double q : {1.0, 2.0, kInf}) {
                    const auto spec = SpaceSpec::besov(s, p, q, Operator::Dirichlet);
                    const NormReport r = evaluate_norm(f, spec, kBank);
                    std::vector<double> terms;
                    int nonzero = 0;
                    for (int j = kBank.j_min; j <= kBank.j_max; ++j) {
                        const double w = std::pow(2.0, s * j) * kBank.phi(j, k) * lp_norm(f, p);
                        terms.push_back(w);
                        if (w != 0.0) ++nonzero;
                    }
                    CHECK(nonzero <= 2);
                    CHECK(r.value == doctest::Approx(lq_norm(terms, q)).epsilon(1e-10));
                }
            }
        }
    }
}

TEST_CASE("inhomogeneous Sobolev norm is equivalent to L^p plus the homogeneous norm") {
    double lo = kInf, hi = 0.0;
    for (const HalfField& f : bump_corpus(kGrid, 8)) {
        for (double p : {2.0, 4.0}) {
            const double inhom = sobolev_norm(f, SpaceSpec::sobolev(1.0, p, Operator::Dirichlet, false));
            const double split = lp_norm(f, p) + sobolev_norm(f, SpaceSpec::sobolev(1.0, p, Operator::Dirichlet));
            lo = std::min(lo, inhom / split);
            hi = std::max(hi, inhom / split);
        }
    }
    // observed band on this corpus: [0.76, 0.88]
    CHECK(lo > 0.5);
    CHECK(hi < 1.25);
    CHECK(hi / lo < 1.5);
}

TEST_CASE("homogeneity") {
    const auto corpus = bump_corpus(kGrid, 4);
    for (const HalfField& f : corpus) {
        for (double c : {-3.0, 0.25}) {
            const auto b = SpaceSpec::besov(1.0, 2.0, 2.0, Operator::Dirichlet);
            CHECK(besov_norm(scaled(f, c), b, kBank) == doctest::Approx(std::abs(c) * besov_norm(f, b, kBank)).epsilon(1e-12));
            const auto h = SpaceSpec::sobolev(1.5, 4.0, Operator::Dirichlet);
            CHECK(sobolev_norm(scaled(f, c), h) == doctest::Approx(std::abs(c) * sobolev_norm(f, h)).epsilon(1e-12));
        }
    }
}

TEST_CASE("monotonicity in q") {
    for (const HalfField& f : bump_corpus(kGrid, 5)) {
        double previous = kInf;
        for (double q : {1.0, 1.5, 2.0, 4.0, kInf}) {
            const double v = besov_norm(f, SpaceSpec::besov(1.0, 2.0, q, Operator::Dirichlet), kBank);
            CHECK(v <= previous * (1.0 + 1e-12));
            previous = v;
        }
    }
}

TEST_CASE("q = inf, s = 0, p = 2 is bounded by the overlap constant") {
    for (const HalfField& f : bump_corpus(kGrid, 5)) {
        const double v = besov_norm(f, SpaceSpec::besov(0.0, 2.0, kInf, Operator::Dirichlet), kBank);
        CHECK(v <= std::sqrt(oracle::kOverlapMax) * lp_norm(f, 2.0) * (1.0 + 1e-10));
    }
}

TEST_CASE("Sobolev and Besov agree within the overlap band for p = q = 2") {
    // Per mode the squared ratio is sigma_s(k) = sum_j (2^j/k)^{2s} phi_j(k)^2.
    for (const auto& w : oracle::kWeightedOverlap) {
        for (int m = 2; m <= 60; ++m) {
            const HalfField f = sine(kGrid, kPi * m / kGrid.half_width);
            const double ratio = besov_norm(f, SpaceSpec::besov(w.s, 2.0, 2.0, Operator::Dirichlet), kBank) /
                                 sobolev_norm(f, SpaceSpec::sobolev(w.s, 2.0, Operator::Dirichlet));
            CHECK(ratio >= std::sqrt(w.min) * (1.0 - 1e-9));
            CHECK(ratio <= std::sqrt(w.max) * (1.0 + 1e-9));
        }
    }
    // With equal energy per octave the ratio approaches the octave mean of sigma_s.
    const GridSpec g = make_grid(1, 8.0, 8192, true);
    const DyadicBank bank = build_bank(g);
    for (const auto& w : oracle::kWeightedOverlap) {
        const HalfField f = octave_flat_series(g, 2, 1024, w.s, 5);
        const double ratio = besov_norm(f, SpaceSpec::besov(w.s, 2.0, 2.0, Operator::Dirichlet), bank) /
                             sobolev_norm(f, SpaceSpec::sobolev(w.s, 2.0, Operator::Dirichlet));
        CHECK(ratio >= 0.8);
        CHECK(ratio <= 1.25);
        CHECK(ratio == doctest::Approx(std::sqrt(w.mean)).epsilon(0.03));
    }
}

TEST_CASE("dyadic shift") {
    const auto profile = [](std::span<const double> x) { return x[0] * std::exp(-x[0] * x[0]); };
    const auto spec = SpaceSpec::besov(1.0, 2.0, 2.0, Operator::Dirichlet);
    const double factor = std::pow(2.0, spec.s - 1.0 / spec.p);

    SUBCASE("compatible grid") {
        // f(2x) sampled on the half-size box has the same samples as f on the full box.
        const GridSpec coarse = make_grid(1, 16.0, 2048, true);
        const GridSpec fine = make_grid(1, 8.0, 2048, true);
        const HalfField f = sample_half(coarse, profile, Boundary::Dirichlet);
        const HalfField g = sample_half(fine, [&](std::span<const double> x) {
            const double y = 2.0 * x[0];
            return profile(std::span<const double>(&y, 1));
        }, Boundary::Dirichlet);
        const DyadicBank bf = build_bank(coarse), bg = build_bank(fine);
        CHECK(bg.j_min == bf.j_min + 1);
        CHECK(bg.j_max == bf.j_max + 1);
        const NormReport rf = evaluate_norm(f, spec, bf), rg = evaluate_norm(g, spec, bg);
        REQUIRE(rf.blocks.size() == rg.blocks.size());
        for (std::size_t i = 0; i < rf.blocks.size(); ++i) {
            CHECK(rg.blocks[i].j == rf.blocks[i].j + 1);
            CHECK(rg.blocks[i].weighted == doctest::Approx(factor * rf.blocks[i].weighted).epsilon(1e-9));
        }
        CHECK(rg.value == doctest::Approx(factor * rf.value).epsilon(1e-10));
    }

    SUBCASE("same grid") {
        const GridSpec g = make_grid(1, 16.0, 4096, true);
        const DyadicBank bank = build_bank(g);
        const HalfField f = sample_half(g, profile, Boundary::Dirichlet);
        const HalfField f2 = sample_half(g, [&](std::span<const double> x) {
            const double y = 2.0 * x[0];
            return profile(std::span<const double>(&y, 1));
        }, Boundary::Dirichlet);
        const double ratio = besov_norm(f2, spec, bank) / besov_norm(f, spec, bank);
        CHECK(ratio == doctest::Approx(factor).epsilon(0.02));
    }
}

TEST_CASE("lifting") {
    for (const HalfField& f : bump_corpus(kGrid, 4)) {
        for (double alpha : {0.5, 1.0}) {
            for (double s : {0.5, 1.5}) {
                for (double p : {1.0, 2.0, 4.0}) {
                    const double lhs =
                        sobolev_norm(frac_power(f, Operator::Dirichlet, alpha), SpaceSpec::sobolev(s, p, Operator::Dirichlet));
                    const double rhs = sobolev_norm(f, SpaceSpec::sobolev(s + alpha, p, Operator::Dirichlet));
                    CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
                }
            }
        }
    }
}

TEST_CASE("semigroup characterization of a single mode") {
    const double k = kPi * 16 / kGrid.half_width;
    const HalfField f = sine(kGrid, k);
    const TimeGrid wide{1e-9 / (k * k), 1e3 / (k * k), 64};
    for (double s : {0.5, 1.0, 2.0}) {
        for (double q : {1.0, 2.0, 3.0}) {
            for (int M : {default_semigroup_order(s), default_semigroup_order(s) + 1}) {
                const double a = q * (M - s / 2.0);
                const double closed = std::pow(k, s * q) * std::tgamma(a) / std::pow(q, a);
                const double expected = lp_norm(f, 2.0) * std::pow(closed, 1.0 / q);
                const double v = besov_norm_semigroup(f, SpaceSpec::besov(s, 2.0, q, Operator::Dirichlet), M, wide);
                CHECK(v == doctest::Approx(expected).epsilon(1e-6));
            }
        }
    }
    CHECK_THROWS_AS(besov_norm_semigroup(f, SpaceSpec::besov(2.0, 2.0, 2.0, Operator::Dirichlet), 1, wide), ConfigError);
    const HalfField zero = scaled(f, 0.0);
    CHECK(besov_norm_semigroup(zero, SpaceSpec::besov(1.0, 2.0, 2.0, Operator::Dirichlet), 2, default_time_grid(kBank)) == 0.0);
}

TEST_CASE("semigroup and block characterizations are equivalent on the corpus") {
    const auto spec = SpaceSpec::besov(1.0, 2.0, 2.0, Operator::Dirichlet);
    double lo = kInf, hi = 0.0;
    for (const HalfField& f : bump_corpus(kGrid, 8)) {
        const double r = besov_norm_semigroup(f, spec, 2, default_time_grid(kBank)) / besov_norm(f, spec, kBank);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(lo > 0.0);
    CHECK(hi / lo < 2.0);
}

TEST_CASE("extension norm equivalence") {
    for (double p : {1.0, 2.0, 4.0}) {
        const HalfField f = sine(kGrid, kPi * 10 / kGrid.half_width);
        const EquivalenceReport r = extension_norm_equivalence(f, SpaceSpec::besov(1.0, p, 2.0, Operator::Dirichlet), kBank);
        CHECK_FALSE(r.degenerate);
        CHECK(r.ratio == doctest::Approx(std::pow(2.0, -1.0 / p)).epsilon(1e-12));
        const HalfField g = cosine(kGrid, kPi * 10 / kGrid.half_width);
        const EquivalenceReport rn = extension_norm_equivalence(g, SpaceSpec::besov(1.0, p, 2.0, Operator::Neumann), kBank);
        CHECK(rn.ratio == doctest::Approx(std::pow(2.0, -1.0 / p)).epsilon(1e-12));
    }
    const EquivalenceReport z =
        extension_norm_equivalence(scaled(sine(kGrid, 1.0), 0.0), SpaceSpec::besov(1.0, 2.0, 2.0, Operator::Dirichlet), kBank);
    CHECK(z.degenerate);
    CHECK(z.ratio == 0.0);
}

TEST_CASE("leaking spectrum is rejected") {
    const GridSpec g = make_grid(1, 8.0, 256, true);
    const HalfField rough = sample_half(g, [](std::span<const double> x) { return x[0] < 3.0 ? x[0] : 0.0; }, Boundary::Dirichlet);
    CHECK_THROWS_AS(besov_norm(rough, SpaceSpec::besov(1.0, 2.0, 2.0, Operator::Dirichlet), build_bank(g)), NumericalError);
}
