#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qwsink/propagator.hpp"
#include "qwsink/types.hpp"

namespace qwsink {

/// Discrete Wigner quasi-probability on the half line.
///
/// W(m,k) = (1/2pi) sum_{n=1}^{m-1} psi_n psi*_{m-n} e^{-i(2n-m)k},
/// defined for center coordinate m = 2..m_max (x_c = m/2) on the uniform
/// grid k_j = -pi + 2 pi j / K, j = 0..K-1.  Values are real by the
/// Hermitian pairing n <-> m-n; construction verifies the imaginary residue
/// and stores the real part.
struct WignerField {
    int m_max = 0;
    std::vector<double> k_grid;
    std::vector<double> total; ///< row-major, index (m-2)*K + j
    std::vector<std::pair<std::string, std::vector<double>>> channels;
    double t = 0.0;
    double max_imag_residual = 0.0;

    int k_nodes() const { return static_cast<int>(k_grid.size()); }
    double at(int m, int j) const {
        return total[static_cast<size_t>(m - 2) * k_grid.size() + static_cast<size_t>(j)];
    }
    const std::vector<double>& channel(const std::string& name) const;
    /// dk * sum_j W(m, k_j); equals the site population |psi_{m/2}|^2 for
    /// even m (and 0 for odd m) when K > 2*m_max.
    double k_marginal(int m) const;
    /// sum_m k_marginal(m).
    double trace() const;
};

/// Wigner transform of an arbitrary state (sites 1..state.size()).
/// Requires k_nodes > 2*m_max so the k grid resolves every phase factor.
WignerField wigner_field(const AmplitudeVector& state, int m_max, int k_nodes,
                         const TimePoint& tp);

/// Field of a walker released on s0 at eta <= 1, split into direct (D) and
/// boundary (B) amplitude channels: DD, DB+BD, BB.
WignerField wigner_weak_decomposition(int s0, int m_max, int k_nodes, const TimePoint& tp,
                                      const WalkParams& params, const SeriesConfig& cfg = {});

/// Field of a walker released on s0 at eta > 1, split into continuum (c) and
/// pole (p) amplitude channels: cc, cp+pc, pp.
WignerField wigner_strong_decomposition(int s0, int m_max, int k_nodes, const TimePoint& tp,
                                        const WalkParams& params, const SeriesConfig& cfg = {});

/// Closed form of the pole-pole channel:
/// W_pp = env(m) * Re[ i^m e^{imk} (alpha - alpha^m)/(1 - alpha) ],
/// alpha = -e^{-2ik}; the removable point alpha = 1 takes the limit m-1.
double wigner_pole_closed_form(int m, double k, const TimePoint& tp, int s0,
                               const WalkParams& params);

/// Same quantity as an explicit cosine sum,
/// env(m) * sum_{n=1}^{m-1} cos(pi m/2 + pi n + (m-2n)k).
double wigner_pole_cosine_form(int m, double k, const TimePoint& tp, int s0,
                               const WalkParams& params);

/// Envelope of the pole-pole channel,
/// env(m) = ((1+eta^-2)^2 / 2pi) e^{-gamma_p t} eta^{-(m+2s0-4)}:
/// geometric confinement with ratio 1/eta per unit m.
double wigner_pole_envelope(int m, const TimePoint& tp, int s0, const WalkParams& params);

/// Spatial extent of the boundary resonance, 1/ln(eta); eta > 1 only.
double localization_length(double eta);

} // namespace qwsink
