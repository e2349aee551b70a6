#pragma once

#include <memory>
#include <vector>

#include "qwsink/types.hpp"

namespace qwsink::oracle {

/// Finite tridiagonal stand-in for the half-line generator, sites 1..L.
/// diag[0] carries the complex loss term; couplings are uniform -Omega/2.
struct TruncatedHamiltonian {
    int L = 0;
    std::vector<cplx> diag;    ///< Omega - i*kappa/2 at site 1, Omega elsewhere
    std::vector<double> offdiag; ///< L-1 couplings, all -Omega/2
    WalkParams params;
};

TruncatedHamiltonian build_truncated(int L, const WalkParams& params);

/// Complex eigenvalues of the truncated generator (dense solver).
std::vector<cplx> spectrum(const TruncatedHamiltonian& H);

/// Lattice size heuristic that keeps the ballistic cone of max_site away
/// from the far wall: max_site + ceil(x) + 40.
int default_truncation(int max_site, double x);

/// Evolve by adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) on the
/// truncated lattice; tol <= 1e-10 is the global accuracy target.  Aborts
/// with TruncationError if amplitude reaches the far wall above 1e-12, and
/// with ConsistencyError if the norm grows under kappa > 0.
AmplitudeVector evolve_oracle(const AmplitudeVector& initial, const TimePoint& tp,
                              int L, double tol = 1e-12);

/// Same evolution by dense scaling-and-squaring matrix exponential; the
/// independent counterpart used in dual-method cross-checks.
AmplitudeVector evolve_oracle_expm(const AmplitudeVector& initial, const TimePoint& tp, int L);

/// Repeated application of one precomputed exponential step; cheap way to
/// sweep a uniform time grid with expm accuracy.
class ExpmStepper {
  public:
    ExpmStepper(int L, const WalkParams& params, double dt);
    /// psi <- E psi, one dt step, with the far-wall amplitude check.
    void advance(std::vector<cplx>& psi) const;
    int size() const { return L_; }

  private:
    int L_;
    std::vector<cplx> step_; ///< dense L x L, row-major
};

/// G(s,s0;z) on the truncated lattice by dense LU solve of (z - H) g = e_{s0}.
/// Verifies the residual below 1e-12; on a near-singular system reports the
/// distance from z to the nearest eigenvalue.
cplx oracle_resolvent(int s, int s0, cplx z, const WalkParams& params, int L);

/// J_n(x) by quadrature of the integral representation
/// (1/pi) int_0^pi cos(n theta - x sin theta) d theta, refined to ~1e-14.
/// Deliberately shares no code with the recurrence implementation.
double bessel_oracle(int n, double x);

} // namespace qwsink::oracle
