#pragma once

#include "qwsink/propagator.hpp"
#include "qwsink/types.hpp"

namespace qwsink {

/// Absorption regime of the boundary, by eta relative to 1.
enum class ScatteringMode { Weak, Critical, Strong };

/// Weak for eta < 1, Critical at eta == 1, Strong for eta > 1.
ScatteringMode classify_regime(double eta);

/// Adaptive composite Gauss-Legendre control for band integrals.
struct QuadratureConfig {
    int base_nodes = 64;      ///< minimum total nodes at the first level
    int max_refinements = 20; ///< panel doublings before giving up
    double abs_tol = 1e-12;   ///< stop when successive levels differ below this
};

/// Survival probability S(t|s0) = sum_s |K(s,s0;t)|^2 for a walker released
/// on site s0.  The site sum runs over the ballistic cone s0 + ceil(x) + 20
/// (or the explicit site_cutoff if positive).
double survival(int s0, const TimePoint& tp, const WalkParams& params,
                const SeriesConfig& cfg = {}, int site_cutoff = 0);

/// First-passage (absorption-time) density F(t|s0) = kappa |K(1,s0;t)|^2.
double first_passage_density(int s0, const TimePoint& tp, const WalkParams& params,
                             const SeriesConfig& cfg = {});

/// Reflection amplitude of a band mode, R(k) = -(e^{ik} - i eta)/(e^{-ik} - i eta).
cplx reflection_amplitude(double k, double eta);

/// Absorbed flux fraction A(k) = 1 - |R(k)|^2 = 4 eta sin k / (1 + eta^2 + 2 eta sin k).
double absorption_fraction(double k, double eta);

/// Band-integral absorption probability from site s0,
/// P_abs = (1/pi) int_0^pi sin^2(s0 k) A(k) dk.
/// Invariant under eta -> 1/eta.  This weighs each band mode by its
/// occupation and absorbed fraction; the long-time 1 - S(t) additionally
/// carries an evanescent (off-band) boundary contribution that decays
/// exponentially in s0, so the two agree only for release sites well away
/// from the absorber (a few 1e-4 apart at s0 = 8, a few 1e-2 at s0 = 2).
double absorption_probability(int s0, double eta, const QuadratureConfig& qcfg = {});

/// 1 - S(T_max|s0): the absorbed probability up to T_max, exact by the flux
/// balance S(t) + int_0^t F = 1.  Monotone in T_max with a power-law tail
/// still in flight; its limit matches absorption_probability only up to the
/// evanescent correction described there.
double absorption_probability_timedomain(int s0, const WalkParams& params, double t_max,
                                         const SeriesConfig& cfg = {});

} // namespace qwsink
