#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qwsink/errors.hpp"
#include "qwsink/observables.hpp"
#include "qwsink/propagator.hpp"
#include "qwsink/wigner.hpp"

using namespace qwsink;

namespace {

AmplitudeVector two_site_state(const cplx& a, const cplx& b) {
    return AmplitudeVector({a, b}, WalkParams(1.0, 0.0));
}

} // namespace

TEST_CASE("two-site field by hand") {
    const cplx a{0.6, 0.0};
    const cplx b{0.0, 0.8};
    const WignerField f = wigner_field(two_site_state(a, b), 4, 16, TimePoint(0.0, 1.0));
    const double inv2pi = 1.0 / (2.0 * std::numbers::pi);
    for (int j = 0; j < f.k_nodes(); ++j) {
        const double k = f.k_grid[static_cast<size_t>(j)];
        CHECK(std::abs(f.at(2, j) - std::norm(a) * inv2pi) < 1e-15);
        const cplx cross = a * std::conj(b) * std::polar(1.0, k);
        CHECK(std::abs(f.at(3, j) - 2.0 * inv2pi * cross.real()) < 1e-15);
        CHECK(std::abs(f.at(4, j) - std::norm(b) * inv2pi) < 1e-15);
    }
    CHECK(std::abs(f.k_marginal(2) - std::norm(a)) < 1e-14);
    CHECK(std::abs(f.k_marginal(3)) < 1e-14);
    CHECK(std::abs(f.k_marginal(4) - std::norm(b)) < 1e-14);
    CHECK(std::abs(f.trace() - 1.0) < 1e-14);
}

TEST_CASE("grid validation") {
    const AmplitudeVector state = two_site_state({1.0, 0.0}, {0.0, 0.0});
    CHECK_THROWS_AS(wigner_field(state, 4, 8, TimePoint(0.0, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS(wigner_field(state, 1, 64, TimePoint(0.0, 1.0)), std::invalid_argument);
}

TEST_CASE("weak decomposition invariants") {
    const WalkParams params(1.0, 0.6);
    const TimePoint tp(3.0, 1.0);
    const int m_max = 2 * (2 + 3 + 20);
    const WignerField f = wigner_weak_decomposition(2, m_max, 2 * m_max + 16, tp, params);
    CHECK(f.max_imag_residual < 1e-12);
    REQUIRE(f.channels.size() == 3);
    CHECK(f.channels[0].first == "DD");
    CHECK(f.channels[1].first == "DB+BD");
    CHECK(f.channels[2].first == "BB");

    double recomb = 0.0;
    for (size_t i = 0; i < f.total.size(); ++i)
        recomb = std::max(recomb, std::abs(f.total[i] - (f.channels[0].second[i] +
                                                         f.channels[1].second[i] +
                                                         f.channels[2].second[i])));
    CHECK(recomb < 1e-12);

    const std::vector<cplx> col = propagator_column(2, tp, params, m_max - 1);
    for (int m = 2; m <= m_max; ++m) {
        const double expected =
            m % 2 == 0 ? std::norm(col[static_cast<size_t>(m / 2 - 1)]) : 0.0;
        CHECK(std::abs(f.k_marginal(m) - expected) < 1e-10);
    }
    CHECK(std::abs(f.trace() - survival(2, tp, params)) < 1e-10);
}

TEST_CASE("strong decomposition invariants and the pole channel forms") {
    const WalkParams params(1.0, 3.0);
    const TimePoint tp(3.0, 1.0);
    const int m_max = 2 * (2 + 3 + 20);
    const int K = 2 * m_max + 16;
    const WignerField f = wigner_strong_decomposition(2, m_max, K, tp, params);
    CHECK(f.max_imag_residual < 1e-12);
    REQUIRE(f.channels.size() == 3);
    CHECK(f.channels[0].first == "cc");
    CHECK(f.channels[1].first == "cp+pc");
    CHECK(f.channels[2].first == "pp");
    CHECK(std::abs(f.trace() - survival(2, tp, params)) < 1e-10);

    const auto& pp = f.channel("pp");
    for (int m = 2; m <= m_max; ++m)
        for (int j = 0; j < f.k_nodes(); ++j) {
            const double k = f.k_grid[static_cast<size_t>(j)];
            const double closed = wigner_pole_closed_form(m, k, tp, 2, params);
            CHECK(std::abs(closed - pp[static_cast<size_t>(m - 2) * f.k_grid.size() +
                                       static_cast<size_t>(j)]) < 1e-12);
        }
    CHECK_THROWS_AS(f.channel("nope"), std::invalid_argument);
}

TEST_CASE("pole channel closed form equals the cosine sum") {
    const WalkParams params(1.0, 2.0);
    const TimePoint tp(1.5, 1.0);
    for (int m = 2; m <= 9; ++m) {
        for (int j = 0; j <= 40; ++j) {
            const double k = -std::numbers::pi + 2.0 * std::numbers::pi * j / 41.0;
            CHECK(std::abs(wigner_pole_closed_form(m, k, tp, 1, params) -
                           wigner_pole_cosine_form(m, k, tp, 1, params)) < 1e-13);
        }
        // k = +-pi/2 makes the geometric ratio degenerate; the limit branch
        // has to agree with the explicit sum there too
        for (double k : {0.5 * std::numbers::pi, -0.5 * std::numbers::pi})
            CHECK(std::abs(wigner_pole_closed_form(m, k, tp, 1, params) -
                           wigner_pole_cosine_form(m, k, tp, 1, params)) < 1e-13);
    }
}

TEST_CASE("pole envelope confines with ratio 1/eta") {
    const WalkParams params(1.0, 2.5);
    const TimePoint tp(0.7, 1.0);
    for (int m = 2; m <= 8; ++m) {
        const double ratio = wigner_pole_envelope(m + 1, tp, 2, params) /
                             wigner_pole_envelope(m, tp, 2, params);
        CHECK(std::abs(ratio - 1.0 / params.eta) < 1e-14);
    }
}

TEST_CASE("localization length") {
    CHECK(localization_length(4.0) == 1.0 / std::log(4.0));
    CHECK_THROWS_AS(localization_length(1.0), RegimeError);
    CHECK_THROWS_AS(localization_length(0.5), RegimeError);
}
