#include <doctest.h>

#include <cmath>

#include "halfspace/errors.hpp"
#include "halfspace/experiments.hpp"
#include "halfspace/singular_integral.hpp"
#include "halfspace/smooth.hpp"
#include "halfspace/spectral.hpp"
#include "helpers.hpp"
#include "oracle_values.hpp"

using namespace halfspace;

TEST_CASE("normalization constant") {
    CHECK(frac_lap_constant(0.25) == doctest::Approx(oracle::kC1s_025).epsilon(1e-14));
    CHECK(frac_lap_constant(0.5) == doctest::Approx(oracle::kC1s_050).epsilon(1e-14));
    CHECK(frac_lap_constant(0.75) == doctest::Approx(oracle::kC1s_075).epsilon(1e-14));
}

TEST_CASE("constants map to zero") {
    const GridSpec g = make_grid(1, 2.0, 256, true);
    const SampledField c = sample(g, [](std::span<const double>) { return 2.5; });
    for (double s : {0.25, 0.5, 0.9}) {
        CHECK(testing_util::max_abs(singular_integral_frac_lap(c, s).values) < 1e-10);
    }
}

TEST_CASE("order outside (0, 1) and multi-dimensional input are rejected") {
    const GridSpec g = make_grid(1, 2.0, 64, true);
    const SampledField f = sample(g, [](std::span<const double> x) { return cutoff(x[0]); });
    CHECK_THROWS_AS(singular_integral_frac_lap(f, 1.0), ConfigError);
    CHECK_THROWS_AS(singular_integral_frac_lap(f, 0.0), ConfigError);
    CHECK_THROWS_AS(singular_integral_frac_lap(sample(make_grid(2, 2.0, 8, true), [](auto) { return 0.0; }), 0.5),
                    ConfigError);
}

TEST_CASE("agreement with the spectral operator on smooth bumps") {
    // Wide box: the spectral operator is periodic, the quadrature is not.
    const GridSpec g = make_grid(1, 512.0, 131072, true);
    std::size_t first = g.points, last = 0;
    for (std::size_t k = 0; k < g.points; ++k) {
        if (std::abs(g.coordinate(k, 0)) <= 4.0) first = std::min(first, k), last = k + 1;
    }
    const SampledField f = sample(g, [](std::span<const double> x) { return cutoff((x[0] + 0.3) / 1.2); });
    for (double s : {0.25, 0.5, 0.75}) {
        const SampledField a = fractional_laplacian(f, s);
        const SampledField b = singular_integral_frac_lap(f, s, first, last);
        CHECK(testing_util::rel_l2(std::span(a.values).subspan(first, last - first),
                                   std::span(b.values).subspan(first, last - first)) < 1e-3);
    }
}

TEST_CASE("jump profile against the high-precision real-line integral") {
    // L = 4, N = 16384: x_k = (m + 1/2) / 2048 at k = N/2 + m.
    const GridSpec g = make_grid(1, 4.0, 16384, true);
    const SampledField jump = counterexample_jump(g);
    for (double s : {0.25, 0.5}) {
        const SampledField quad = singular_integral_frac_lap(jump, s, g.points / 2, g.points / 2 + 600);
        const SampledField spec = fractional_laplacian(jump, s);
        for (const auto& ref : oracle::kJump) {
            if (ref.s != s) continue;
            CAPTURE(ref.m);
            CAPTURE(s);
            const std::size_t k = g.points / 2 + static_cast<std::size_t>(ref.m);
            CHECK(quad.values[k] == doctest::Approx(ref.value).epsilon(1e-5));
            CHECK(spec.values[k] == doctest::Approx(ref.value).epsilon(5e-4));
        }
    }
}
