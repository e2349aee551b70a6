#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "qwsink/errors.hpp"
#include "qwsink/propagator.hpp"

using namespace qwsink;

TEST_CASE("t = 0 is the exact Kronecker delta") {
    const WalkParams params(1.0, 2.5);
    const TimePoint tp(0.0, 1.0);
    CHECK(propagator(3, 3, tp, params) == cplx{1.0, 0.0});
    CHECK(propagator(2, 3, tp, params) == cplx{0.0, 0.0});
    CHECK(propagator(9, 3, tp, params) == cplx{0.0, 0.0});
}

TEST_CASE("hard wall at the origin site against frozen Bessel data") {
    // K(1,1;x) = e^{-ix} (J_0 + J_2)(x); at x = 1 the bracket is
    // 0.76519768655796661 + 0.1149034849319005
    const TimePoint tp(1.0, 1.0);
    const cplx expected = cplx{std::cos(1.0), -std::sin(1.0)} * 0.88010117148986711;
    CHECK(std::abs(hard_wall_propagator(1, 1, tp, 1.0) - expected) < 1e-14);
}

TEST_CASE("kappa = 0 collapses the boundary series") {
    const WalkParams params(1.0, 0.0);
    const TimePoint tp(4.2, 1.0);
    for (int s = 1; s <= 8; ++s)
        CHECK(weak_propagator(s, 3, tp, params) == hard_wall_propagator(s, 3, tp, 1.0));
}

TEST_CASE("propagator is symmetric in source and target") {
    const TimePoint tp(3.7, 1.0);
    for (double kappa : {0.4, 1.0, 3.0}) {
        const WalkParams params(1.0, kappa);
        for (int s = 1; s <= 6; ++s)
            for (int s0 = s; s0 <= 6; ++s0)
                CHECK(std::abs(propagator(s, s0, tp, params) -
                               propagator(s0, s, tp, params)) < 1e-15);
    }
}

TEST_CASE("regime guards") {
    const TimePoint tp(1.0, 1.0);
    CHECK_THROWS_AS(weak_propagator(1, 1, tp, WalkParams(1.0, 2.0)), RegimeError);
    CHECK_THROWS_AS(strong_continuum(1, 1, tp, WalkParams(1.0, 1.0)), RegimeError);
    CHECK_THROWS_AS(strong_continuum(1, 1, tp, WalkParams(1.0, 0.5)), RegimeError);
    CHECK_THROWS_AS(pole_propagator(1, 1, tp, WalkParams(1.0, 0.5)), RegimeError);
}

TEST_CASE("short-time branch joins the series branch") {
    const WalkParams params(1.0, 0.8);
    // the small-x evaluation switches form at x = 1e-8; values on both sides
    // may differ only by the O(x) drift of the propagator itself
    const cplx lo = weak_propagator(3, 3, TimePoint(0.99e-8, 1.0), params);
    const cplx hi = weak_propagator(3, 3, TimePoint(1.01e-8, 1.0), params);
    CHECK(std::abs(lo - hi) < 1e-9);
    CHECK(std::abs(lo - cplx{1.0, 0.0}) < 1e-6);
}

TEST_CASE("column agrees with per-site evaluation") {
    const TimePoint tp(6.0, 1.0);
    for (double kappa : {0.5, 4.0}) {
        const WalkParams params(1.0, kappa);
        const std::vector<cplx> col = propagator_column(2, tp, params, 20);
        REQUIRE(col.size() == 20);
        for (int s = 1; s <= 20; ++s)
            CHECK(std::abs(col[static_cast<size_t>(s - 1)] -
                           propagator(s, 2, tp, params)) < 1e-14);
    }
}

TEST_CASE("branches meet across eta = 1") {
    const TimePoint tp(6.0, 1.0);
    const std::vector<cplx> below = propagator_column(2, tp, WalkParams(1.0, 1.0 - 1e-6), 28);
    const std::vector<cplx> above = propagator_column(2, tp, WalkParams(1.0, 1.0 + 1e-6), 28);
    for (size_t i = 0; i < below.size(); ++i)
        CHECK(std::abs(below[i] - above[i]) < 1e-4);
}

TEST_CASE("strong propagator splits into continuum plus pole") {
    const WalkParams params(1.0, 4.0);
    const TimePoint tp(2.5, 1.0);
    for (int s = 1; s <= 10; ++s) {
        const cplx whole = propagator(s, 2, tp, params);
        const cplx parts = strong_continuum(s, 2, tp, params) +
                           pole_propagator(s, 2, tp, params);
        CHECK(std::abs(whole - parts) < 1e-15);
    }
}

TEST_CASE("pole term decays geometrically in the site index") {
    const WalkParams params(1.0, 4.0);
    const TimePoint tp(1.0, 1.0);
    for (int s = 1; s <= 6; ++s) {
        const double ratio = std::abs(pole_propagator(s + 1, 2, tp, params)) /
                             std::abs(pole_propagator(s, 2, tp, params));
        CHECK(std::abs(ratio - 0.25) < 1e-15);
    }
}

TEST_CASE("state propagation matches the column for a point source") {
    const WalkParams params(1.0, 1.7);
    const TimePoint tp(3.0, 1.0);
    std::vector<cplx> init(4, cplx{0.0, 0.0});
    init[3] = 1.0;
    const AmplitudeVector out = propagate_state(AmplitudeVector(init, params), tp, params);
    const std::vector<cplx> col = propagator_column(4, tp, params, out.size());
    for (int i = 0; i < out.size(); ++i)
        CHECK(std::abs(out.values[static_cast<size_t>(i)] -
                       col[static_cast<size_t>(i)]) < 1e-14);
}

TEST_CASE("state propagation is linear in the input") {
    const WalkParams params(1.0, 0.6);
    const TimePoint tp(2.0, 1.0);
    const cplx a{0.6, 0.0}, b{0.0, -0.8};
    std::vector<cplx> init = {a, b};
    const AmplitudeVector out = propagate_state(AmplitudeVector(init, params), tp, params);
    for (int s = 1; s <= out.size(); ++s) {
        const cplx direct = a * propagator(s, 1, tp, params) +
                            b * propagator(s, 2, tp, params);
        CHECK(std::abs(out.amplitude(s) - direct) < 1e-14);
    }
}

TEST_CASE("unnormalized input is rejected") {
    const WalkParams params(1.0, 0.6);
    std::vector<cplx> init = {cplx{0.5, 0.0}};
    CHECK_THROWS_AS(propagate_state(AmplitudeVector(init, params), TimePoint(1.0, 1.0), params),
                    std::invalid_argument);
}
