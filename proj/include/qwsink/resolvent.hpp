#pragma once

#include <optional>

#include "qwsink/types.hpp"

namespace qwsink {

/// Which side of the band cut (0, 2*Omega) an on-axis energy is approached from.
enum class CutSide {
    OffCut,    ///< z genuinely off the real band interval
    AbovePlus, ///< z = E + i0, retarded boundary values
    BelowMinus ///< z = E - i0
};

/// Spectral point z together with the branch variable q of
/// z = Omega - (Omega/2)(q + 1/q).  Off the cut |q| < 1; on the cut
/// q = exp(+-ik) with k = arccos((Omega - E)/Omega).
struct SpectralVariable {
    cplx z;
    cplx q;
    CutSide side = CutSide::OffCut;
};

/// Boundary resonance data, defined for eta > 1 only.
struct PoleData {
    cplx q_p;                ///< -i/eta, inside the unit disk
    cplx z_p;                ///< Omega - (i/2)(kappa - Omega^2/kappa)
    double gamma_p = 0.0;    ///< decay rate kappa - Omega^2/kappa
    cplx residue_prefactor;  ///< 1 - q_p^2
};

/// Map z to the decaying branch root q (|q| < 1 off the cut).  On-axis z
/// inside (0, 2*Omega) requires an explicit side; the band edges 0 and
/// 2*Omega are degenerate (q = +-1) and rejected.
SpectralVariable q_of_z(cplx z, double omega, CutSide side = CutSide::OffCut);

/// Inverse of q_of_z; handy for sampling test points with a known branch value.
cplx z_of_q(cplx q, double omega);

/// Full-line lattice Green function g_n(z) = -(2/Omega) q^{|n|+1} / (1 - q^2).
cplx g_line(int n, const SpectralVariable& sv, double omega);

/// Half-line (hard wall at s=0) Green function, by the image construction
/// G_D(s,s0) = g_{s-s0} - g_{s+s0}.  Sites s, s0 >= 1.
cplx green_hard_wall(int s, int s0, const SpectralVariable& sv, double omega);

/// Green function with the lossy site,
/// G = G_D - (2 i eta / Omega) q^{s+s0} / (1 - i eta q).
/// Rejects evaluation numerically at the boundary pole 1 = i*eta*q.
cplx green_absorbing(int s, int s0, const SpectralVariable& sv, const WalkParams& params);

/// Pole of the boundary factor for eta > 1; empty otherwise (at eta <= 1 the
/// root sits on or outside the physical branch and no resonance is present).
std::optional<PoleData> boundary_pole(const WalkParams& params);

} // namespace qwsink
