#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qwsink/errors.hpp"
#include "qwsink/resolvent.hpp"

using namespace qwsink;

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(WalkParams(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(WalkParams(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(WalkParams(1.0, -0.5), std::invalid_argument);
    const WalkParams p(2.0, 3.0);
    CHECK(p.eta == 1.5);
}

TEST_CASE("branch map round trip at a rational point") {
    // q = 1/2 corresponds to z = -1/4 at omega = 1
    const cplx z = z_of_q(cplx{0.5, 0.0}, 1.0);
    CHECK(std::abs(z - cplx{-0.25, 0.0}) < 1e-16);
    const SpectralVariable sv = q_of_z(z, 1.0);
    CHECK(std::abs(sv.q - cplx{0.5, 0.0}) < 1e-15);
    CHECK(sv.side == CutSide::OffCut);
}

TEST_CASE("decaying root everywhere off the band") {
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const cplx q0 = std::polar(0.05 + 0.9 * unit(rng), 2.0 * M_PI * unit(rng));
        const cplx z = z_of_q(q0, 1.0);
        const SpectralVariable sv = q_of_z(z, 1.0);
        CHECK(std::abs(sv.q) < 1.0);
        CHECK(std::abs(z_of_q(sv.q, 1.0) - z) < 1e-12 * (1.0 + std::abs(z)));
    }
}

TEST_CASE("on-band evaluation picks the requested side") {
    // E = omega is band center: k = pi/2, q = e^{+-ik}
    const SpectralVariable above = q_of_z(cplx{1.0, 0.0}, 1.0, CutSide::AbovePlus);
    CHECK(std::abs(above.q - cplx{0.0, 1.0}) < 1e-15);
    const SpectralVariable below = q_of_z(cplx{1.0, 0.0}, 1.0, CutSide::BelowMinus);
    CHECK(std::abs(below.q - cplx{0.0, -1.0}) < 1e-15);
    CHECK_THROWS_AS(q_of_z(cplx{0.0, 0.0}, 1.0, CutSide::AbovePlus), DegenerateBranchError);
    CHECK_THROWS_AS(q_of_z(cplx{2.0, 0.0}, 1.0, CutSide::AbovePlus), DegenerateBranchError);
}

TEST_CASE("free line element at the rational point") {
    // g_0(z=-1/4) = -(2/omega) q/(1-q^2) = -4/3 at q = 1/2
    const SpectralVariable sv = q_of_z(cplx{-0.25, 0.0}, 1.0);
    CHECK(std::abs(g_line(0, sv, 1.0) - cplx{-4.0 / 3.0, 0.0}) < 1e-14);
    CHECK(std::abs(g_line(-3, sv, 1.0) - g_line(3, sv, 1.0)) == 0.0);
}

TEST_CASE("hard-wall Green function is symmetric") {
    const SpectralVariable sv = q_of_z(cplx{0.3, 0.9}, 1.0);
    for (int s = 1; s <= 5; ++s)
        for (int s0 = 1; s0 <= 5; ++s0)
            CHECK(std::abs(green_hard_wall(s, s0, sv, 1.0) -
                           green_hard_wall(s0, s, sv, 1.0)) < 1e-15);
}

TEST_CASE("absorbing Green function satisfies Dyson and boundary identities") {
    const WalkParams params(1.0, 1.3);
    const cplx ik2{0.0, 0.5 * params.kappa};
    std::mt19937 rng(11u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const cplx q0 = std::polar(0.2 + 0.6 * unit(rng), 2.0 * M_PI * unit(rng));
        const SpectralVariable sv = q_of_z(z_of_q(q0, 1.0), 1.0);
        const int s = 1 + static_cast<int>(unit(rng) * 6.0);
        const int s0 = 1 + static_cast<int>(unit(rng) * 6.0);
        const cplx gk = green_absorbing(s, s0, sv, params);
        const cplx gd = green_hard_wall(s, s0, sv, 1.0);
        const cplx dyson = gk - gd +
            ik2 * green_hard_wall(s, 1, sv, 1.0) * green_absorbing(1, s0, sv, params);
        CHECK(std::abs(dyson) < 1e-12);
        const cplx boundary = green_absorbing(1, s0, sv, params) *
                                  (1.0 + ik2 * green_hard_wall(1, 1, sv, 1.0)) -
                              green_hard_wall(1, s0, sv, 1.0);
        CHECK(std::abs(boundary) < 1e-12);
    }
}

TEST_CASE("kappa = 0 reduces to the hard wall") {
    const WalkParams params(1.0, 0.0);
    const SpectralVariable sv = q_of_z(cplx{-0.4, 0.2}, 1.0);
    CHECK(std::abs(green_absorbing(3, 2, sv, params) -
                   green_hard_wall(3, 2, sv, 1.0)) == 0.0);
}

TEST_CASE("evaluation at the resonance is rejected by name") {
    // eta = 2: the outgoing-root condition 1 = i eta q is met at q = -i/2,
    // i.e. z = 1 - 0.75i
    const WalkParams params(1.0, 2.0);
    const SpectralVariable sv = q_of_z(cplx{1.0, -0.75}, 1.0);
    CHECK(std::abs(sv.q - cplx{0.0, -0.5}) < 1e-15);
    CHECK_THROWS_AS(green_absorbing(1, 1, sv, params), PoleEvaluationError);
}

TEST_CASE("boundary pole data at eta = 4") {
    const WalkParams params(1.0, 4.0);
    const auto pole = boundary_pole(params);
    REQUIRE(pole.has_value());
    CHECK(pole->q_p == cplx{0.0, -0.25});
    CHECK(pole->z_p == cplx{1.0, -1.875});
    CHECK(pole->gamma_p == 3.75);
    CHECK(pole->residue_prefactor == cplx{1.0625, 0.0});
    CHECK(!boundary_pole(WalkParams(1.0, 1.0)).has_value());
    CHECK(!boundary_pole(WalkParams(1.0, 0.5)).has_value());
}

TEST_CASE("integer powers stay exact on the imaginary axis") {
    const cplx q{0.0, -0.25};
    CHECK(int_pow(q, 3) == cplx{0.0, 0.015625});
    CHECK(int_pow(q, 0) == cplx{1.0, 0.0});
    const cplx inv = int_pow(q, -2);
    CHECK(inv == cplx{-16.0, 0.0});
}
