#pragma once

#include "qwsink/bessel.hpp"
#include "qwsink/resolvent.hpp"
#include "qwsink/types.hpp"

namespace qwsink {

/// Propagator of the hard-wall half line (kappa = 0):
/// K_D(s,s0;t) = e^{-ix} [ i^{s-s0} J_{s-s0}(x) - i^{s+s0} J_{s+s0}(x) ],  x = Omega t.
cplx hard_wall_propagator(int s, int s0, const TimePoint& tp, double omega);

/// Propagator for eta <= 1: hard-wall part plus the alternating
/// boundary-scattering series in ascending Bessel orders.
cplx weak_propagator(int s, int s0, const TimePoint& tp, const WalkParams& params,
                     const SeriesConfig& cfg = {});

/// Continuum (branch-cut) part of the propagator for eta > 1, descending
/// Bessel orders.  The full strong-regime propagator is this plus pole_propagator.
cplx strong_continuum(int s, int s0, const TimePoint& tp, const WalkParams& params,
                      const SeriesConfig& cfg = {});

/// Resonance contribution for eta > 1:
/// K_p = (1 - q_p^2) q_p^{s+s0-2} e^{-i z_p t}.
cplx pole_propagator(int s, int s0, const TimePoint& tp, const WalkParams& params);

/// Full propagator K(s,s0;t), dispatching on the regime.  t = 0 returns the
/// Kronecker delta exactly.
cplx propagator(int s, int s0, const TimePoint& tp, const WalkParams& params,
                const SeriesConfig& cfg = {});

/// K(s,s0;t) for all s = 1..s_max with one shared Bessel row; identical
/// values to calling propagator per site.
std::vector<cplx> propagator_column(int s0, const TimePoint& tp, const WalkParams& params,
                                    int s_max, const SeriesConfig& cfg = {});

/// Evolve a finitely supported normalized state; output length covers the
/// ballistic cone of the support (max site + ceil(x) + 20).
AmplitudeVector propagate_state(const AmplitudeVector& initial, const TimePoint& tp,
                                const WalkParams& params, const SeriesConfig& cfg = {});

namespace detail {

struct SeriesSum {
    double value = 0.0; ///< real series factor (the i^N and phase are applied by callers)
    int terms = 0;
};

/// S = 2 eta sum_{r>=0} (-eta)^r ((N+r)/x) J_{N+r}(x); the boundary part of the
/// weak propagator is i^N e^{-ix} S.  Well defined down to x = 0, where the
/// equivalent two-Bessel form [J_{N+r-1} + J_{N+r+1}] is summed instead.
SeriesSum weak_boundary_series(int N, double eta, BesselCache& jc, const SeriesConfig& cfg);

/// S = 2 sum_{r>=1} (-1)^{r+1} eta^{1-r} ((N-r)/x) J_{N-r}(x); the scattering
/// part of the strong continuum is i^N e^{-ix} S.
SeriesSum strong_boundary_series(int N, double eta, BesselCache& jc, const SeriesConfig& cfg);

} // namespace detail
} // namespace qwsink
