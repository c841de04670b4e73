#include <doctest.h>

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfspace/parallel.hpp"
#include "halfspace/stats.hpp"

using namespace halfspace;

TEST_CASE("fit_line") {
    const std::vector<double> x{0, 1, 2, 3, 4};
    std::vector<double> y;
    for (double v : x) y.push_back(2.0 - 0.5 * v);
    const LinearFit f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(f.intercept == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.slope_stderr < 1e-14);
    CHECK(f.points == 5);

    // y = x + (+1,-1,+1,-1,+1): slope 1, stderr from the residuals
    const std::vector<double> noisy{1, 0, 3, 2, 5};
    const LinearFit g = fit_line(x, noisy);
    CHECK(g.slope == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g.slope_stderr == doctest::Approx(std::sqrt((4.8 / 3.0) / 10.0)).epsilon(1e-12));

    const std::vector<double> two{0, 1};
    CHECK(std::isinf(fit_line(two, two).slope_stderr));
}

TEST_CASE("median") {
    const std::vector<double> odd{3, 1, 2};
    const std::vector<double> even{4, 1, 3, 2};
    CHECK(median(odd) == 2.0);
    CHECK(median(even) == 2.5);
}

TEST_CASE("parallel_for") {
    const unsigned saved = thread_count();
    for (unsigned threads : {1u, 3u, 8u}) {
        set_thread_count(threads);
        std::vector<int> hits(1000, 0);
        parallel_for(hits.size(), [&](std::size_t i) { hits[i] += static_cast<int>(i); });
        for (std::size_t i = 0; i < hits.size(); ++i) CHECK(hits[i] == static_cast<int>(i));

        try {
            parallel_for(100, [](std::size_t i) {
                if (i == 17 || i == 63) throw std::runtime_error(std::to_string(i));
            });
            FAIL("expected an exception");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()) == "17");
        }

        std::atomic<int> inner{0};
        parallel_for(4, [&](std::size_t) { parallel_for(5, [&](std::size_t) { ++inner; }); });
        CHECK(inner == 20);
    }
    set_thread_count(saved);
}
