#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "qwsink/errors.hpp"
#include "qwsink/oracle.hpp"
#include "qwsink/propagator.hpp"
#include "qwsink/resolvent.hpp"

using namespace qwsink;

namespace {

AmplitudeVector point_source(int s0, const WalkParams& params) {
    std::vector<cplx> v(static_cast<size_t>(s0), cplx{0.0, 0.0});
    v[static_cast<size_t>(s0 - 1)] = 1.0;
    return AmplitudeVector(v, params);
}

} // namespace

TEST_CASE("quadrature Bessel oracle against frozen references") {
    CHECK(std::abs(oracle::bessel_oracle(0, 1.0) - 0.76519768655796661) < 1e-14);
    CHECK(std::abs(oracle::bessel_oracle(5, 10.0) - (-0.2340615281867936)) < 1e-13);
    CHECK(std::abs(oracle::bessel_oracle(30, 50.0) - 0.048434257245509441) < 1e-13);
    CHECK(oracle::bessel_oracle(0, 0.0) == 1.0);
    CHECK(std::abs(oracle::bessel_oracle(3, 0.0)) < 1e-15);
}

TEST_CASE("truncated generator layout and spectrum") {
    const WalkParams params(1.0, 2.0);
    const auto H = oracle::build_truncated(30, params);
    CHECK(H.L == 30);
    CHECK(H.diag[0] == cplx{1.0, -1.0});
    CHECK(H.diag[5] == cplx{1.0, 0.0});
    CHECK(H.offdiag.size() == 29);
    CHECK(H.offdiag[3] == -0.5);

    const auto closed = oracle::spectrum(oracle::build_truncated(40, WalkParams(1.0, 0.0)));
    for (const cplx& ev : closed) {
        CHECK(std::abs(ev.imag()) < 1e-10);
        CHECK(ev.real() > -1e-10);
        CHECK(ev.real() < 2.0 + 1e-10);
    }
}

TEST_CASE("adaptive and exponential evolutions agree") {
    const WalkParams params(1.0, 0.7);
    const TimePoint tp(4.0, 1.0);
    const int L = 40;
    const auto a = oracle::evolve_oracle(point_source(2, params), tp, L);
    const auto b = oracle::evolve_oracle_expm(point_source(2, params), tp, L);
    REQUIRE(a.size() == L);
    REQUIRE(b.size() == L);
    for (int i = 0; i < L; ++i)
        CHECK(std::abs(a.values[static_cast<size_t>(i)] -
                       b.values[static_cast<size_t>(i)]) < 1e-11);
}

TEST_CASE("stepper sweep matches a single exponential") {
    const WalkParams params(1.0, 2.6);
    const int L = 36;
    const oracle::ExpmStepper stepper(L, params, 0.5);
    std::vector<cplx> psi(static_cast<size_t>(L), cplx{0.0, 0.0});
    psi[2] = 1.0;
    for (int j = 0; j < 8; ++j) stepper.advance(psi);
    const auto whole = oracle::evolve_oracle_expm(point_source(3, params), TimePoint(4.0, 1.0), L);
    for (int i = 0; i < L; ++i)
        CHECK(std::abs(psi[static_cast<size_t>(i)] -
                       whole.values[static_cast<size_t>(i)]) < 1e-12);
}

TEST_CASE("too small a lattice trips the far-wall guard") {
    const WalkParams params(1.0, 0.0);
    CHECK_THROWS_AS(oracle::evolve_oracle(point_source(1, params), TimePoint(30.0, 1.0), 10),
                    TruncationError);
    CHECK_THROWS_AS(oracle::evolve_oracle_expm(point_source(1, params), TimePoint(30.0, 1.0), 10),
                    TruncationError);
}

TEST_CASE("evolution reproduces the closed-form column") {
    const TimePoint tp(5.0, 1.0);
    for (double kappa : {0.5, 1.0, 3.0}) {
        const WalkParams params(1.0, kappa);
        const int L = oracle::default_truncation(2, tp.x);
        const auto psi = oracle::evolve_oracle_expm(point_source(2, params), tp, L);
        const auto col = propagator_column(2, tp, params, psi.size());
        double worst = 0.0;
        for (int i = 0; i < psi.size(); ++i)
            worst = std::max(worst, std::abs(psi.values[static_cast<size_t>(i)] -
                                             col[static_cast<size_t>(i)]));
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("lattice resolvent against closed forms") {
    // kappa = 0, z = -1/4: G(1,1) = -2q at q = 1/2
    const WalkParams closed(1.0, 0.0);
    const cplx g11 = oracle::oracle_resolvent(1, 1, cplx{-0.25, 0.0}, closed, 60);
    CHECK(std::abs(g11 - cplx{-1.0, 0.0}) < 1e-12);

    const WalkParams lossy(1.0, 1.5);
    const cplx q0 = std::polar(0.4, 0.7);
    const cplx z = z_of_q(q0, 1.0);
    const cplx exact = green_absorbing(2, 3, q_of_z(z, 1.0), lossy);
    CHECK(std::abs(oracle::oracle_resolvent(2, 3, z, lossy, 80) - exact) < 1e-10);
}

TEST_CASE("truncation heuristic") {
    CHECK(oracle::default_truncation(8, 30.0) == 78);
    CHECK(oracle::default_truncation(2, 0.5) == 43);
}
