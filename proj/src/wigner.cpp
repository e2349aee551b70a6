#include "qwsink/wigner.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qwsink {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> make_k_grid(int k_nodes) {
    std::vector<double> k(static_cast<size_t>(k_nodes));
    for (int j = 0; j < k_nodes; ++j)
        k[static_cast<size_t>(j)] = -std::numbers::pi + kTwoPi * j / k_nodes;
    return k;
}

void check_grid(int m_max, int k_nodes, const char* who) {
    if (m_max < 2)
        throw std::invalid_argument(std::string(who) + ": m_max must be >= 2");
    if (k_nodes <= 2 * m_max)
        throw std::invalid_argument(std::string(who) +
                                    ": need k_nodes > 2*m_max for exact k-marginals");
}

// grid(m, j) = (1/2pi) sum_n a_n conj(b_{m-n}) e^{-i(2n-m)k_j}.
// For a == b (and for symmetrized cross terms) the result is real.
std::vector<cplx> bilinear_grid(const std::vector<cplx>& a, const std::vector<cplx>& b,
                                int m_max, const std::vector<double>& k_grid) {
    const int K = static_cast<int>(k_grid.size());
    const int L = static_cast<int>(a.size()); // == b.size(), sites 1..L
    std::vector<cplx> grid(static_cast<size_t>(m_max - 1) * K, cplx{0.0, 0.0});
    for (int m = 2; m <= m_max; ++m) {
        const int n_lo = std::max(1, m - L);
        const int n_hi = std::min(m - 1, L);
        for (int j = 0; j < K; ++j) {
            const double k = k_grid[static_cast<size_t>(j)];
            cplx acc{0.0, 0.0};
            for (int n = n_lo; n <= n_hi; ++n) {
                const cplx w = a[static_cast<size_t>(n - 1)] *
                               std::conj(b[static_cast<size_t>(m - n - 1)]);
                acc += w * std::polar(1.0, -(2.0 * n - m) * k);
            }
            grid[static_cast<size_t>(m - 2) * K + static_cast<size_t>(j)] = acc / kTwoPi;
        }
    }
    return grid;
}

// Realify with a residual check; quasi-probabilities must come out real.
std::vector<double> realify(const std::vector<cplx>& grid, double& max_resid,
                            const char* who) {
    std::vector<double> out(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        const double im = std::abs(grid[i].imag());
        if (im > max_resid) max_resid = im;
        if (im > 1e-9) {
            std::ostringstream os;
            os << who << ": imaginary residue " << im << " exceeds 1e-9";
            throw ConsistencyError(os.str());
        }
        out[i] = grid[i].real();
    }
    return out;
}

// factor * Re(g), for symmetrized cross channels: the mirror term is the
// complex conjugate, so DB+BD = 2 Re(DB) with no residual to check.
std::vector<double> real_sum(const std::vector<cplx>& g, double factor) {
    std::vector<double> out(g.size());
    for (size_t i = 0; i < g.size(); ++i) out[i] = factor * g[i].real();
    return out;
}

WignerField assemble(const std::vector<cplx>& full, int m_max, int k_nodes,
                     const TimePoint& tp, const char* who) {
    WignerField f;
    f.m_max = m_max;
    f.k_grid = make_k_grid(k_nodes);
    f.t = tp.t;
    const std::vector<cplx> grid = bilinear_grid(full, full, m_max, f.k_grid);
    f.total = realify(grid, f.max_imag_residual, who);
    return f;
}

} // namespace

const std::vector<double>& WignerField::channel(const std::string& name) const {
    for (const auto& [n, g] : channels)
        if (n == name) return g;
    throw std::invalid_argument("WignerField: no channel named '" + name + "'");
}

double WignerField::k_marginal(int m) const {
    const int K = k_nodes();
    const double dk = kTwoPi / K;
    double acc = 0.0;
    for (int j = 0; j < K; ++j) acc += at(m, j);
    return acc * dk;
}

double WignerField::trace() const {
    double acc = 0.0;
    for (int m = 2; m <= m_max; ++m) acc += k_marginal(m);
    return acc;
}

WignerField wigner_field(const AmplitudeVector& state, int m_max, int k_nodes,
                         const TimePoint& tp) {
    check_grid(m_max, k_nodes, "wigner_field");
    if (state.size() < 1)
        throw std::invalid_argument("wigner_field: empty state");
    return assemble(state.values, m_max, k_nodes, tp, "wigner_field");
}

WignerField wigner_weak_decomposition(int s0, int m_max, int k_nodes, const TimePoint& tp,
                                      const WalkParams& params, const SeriesConfig& cfg) {
    check_grid(m_max, k_nodes, "wigner_weak_decomposition");
    if (s0 < 1) throw std::invalid_argument("wigner_weak_decomposition: s0 must be >= 1");
    if (params.eta > 1.0)
        throw RegimeError("wigner_weak_decomposition: eta > 1, use the strong decomposition");

    // Amplitude channels with the common e^{-ix} phase removed (it cancels
    // in every bilinear): direct hard-wall part and boundary-scattered part.
    const int L = m_max - 1;
    const double x = tp.x;
    detail::BesselCache jc(x);
    jc.ensure(L + s0 + 1);
    std::vector<cplx> phi_d(static_cast<size_t>(L)), phi_b(static_cast<size_t>(L));
    for (int s = 1; s <= L; ++s) {
        phi_d[static_cast<size_t>(s - 1)] =
            unit_imag_pow(s - s0) * jc.j(s - s0) - unit_imag_pow(s + s0) * jc.j(s + s0);
        const detail::SeriesSum ser = detail::weak_boundary_series(s + s0, params.eta, jc, cfg);
        phi_b[static_cast<size_t>(s - 1)] = unit_imag_pow(s + s0) * ser.value;
    }
    std::vector<cplx> full(static_cast<size_t>(L));
    for (int i = 0; i < L; ++i)
        full[static_cast<size_t>(i)] = phi_d[static_cast<size_t>(i)] + phi_b[static_cast<size_t>(i)];

    WignerField f = assemble(full, m_max, k_nodes, tp, "wigner_weak_decomposition");
    const std::vector<cplx> dd = bilinear_grid(phi_d, phi_d, m_max, f.k_grid);
    const std::vector<cplx> db = bilinear_grid(phi_d, phi_b, m_max, f.k_grid);
    const std::vector<cplx> bb = bilinear_grid(phi_b, phi_b, m_max, f.k_grid);
    f.channels.emplace_back("DD", realify(dd, f.max_imag_residual, "wigner_weak DD"));
    f.channels.emplace_back("DB+BD", real_sum(db, 2.0));
    f.channels.emplace_back("BB", realify(bb, f.max_imag_residual, "wigner_weak BB"));
    return f;
}

WignerField wigner_strong_decomposition(int s0, int m_max, int k_nodes, const TimePoint& tp,
                                        const WalkParams& params, const SeriesConfig& cfg) {
    check_grid(m_max, k_nodes, "wigner_strong_decomposition");
    if (s0 < 1) throw std::invalid_argument("wigner_strong_decomposition: s0 must be >= 1");
    if (params.eta <= 1.0)
        throw RegimeError("wigner_strong_decomposition: eta <= 1, use the weak decomposition");

    const int L = m_max - 1;
    std::vector<cplx> cont(static_cast<size_t>(L)), pole(static_cast<size_t>(L));
    for (int s = 1; s <= L; ++s) {
        cont[static_cast<size_t>(s - 1)] = strong_continuum(s, s0, tp, params, cfg);
        pole[static_cast<size_t>(s - 1)] = pole_propagator(s, s0, tp, params);
    }
    std::vector<cplx> full(static_cast<size_t>(L));
    for (int i = 0; i < L; ++i)
        full[static_cast<size_t>(i)] = cont[static_cast<size_t>(i)] + pole[static_cast<size_t>(i)];

    WignerField f = assemble(full, m_max, k_nodes, tp, "wigner_strong_decomposition");
    const std::vector<cplx> cc = bilinear_grid(cont, cont, m_max, f.k_grid);
    const std::vector<cplx> cp = bilinear_grid(cont, pole, m_max, f.k_grid);
    const std::vector<cplx> pp = bilinear_grid(pole, pole, m_max, f.k_grid);
    f.channels.emplace_back("cc", realify(cc, f.max_imag_residual, "wigner_strong cc"));
    f.channels.emplace_back("cp+pc", real_sum(cp, 2.0));
    f.channels.emplace_back("pp", realify(pp, f.max_imag_residual, "wigner_strong pp"));
    return f;
}

double wigner_pole_envelope(int m, const TimePoint& tp, int s0, const WalkParams& params) {
    if (m < 2 || s0 < 1)
        throw std::invalid_argument("wigner_pole_envelope: need m >= 2, s0 >= 1");
    auto pole = boundary_pole(params);
    if (!pole)
        throw RegimeError("wigner_pole_envelope: no boundary resonance at eta = " +
                          std::to_string(params.eta));
    const double eta = params.eta;
    const double pref = (1.0 + 1.0 / (eta * eta));
    return pref * pref / kTwoPi * std::exp(-pole->gamma_p * tp.t) *
           std::pow(eta, -static_cast<double>(m + 2 * s0 - 4));
}

double wigner_pole_closed_form(int m, double k, const TimePoint& tp, int s0,
                               const WalkParams& params) {
    const double env = wigner_pole_envelope(m, tp, s0, params);
    // alpha = (q_p / q_p*) e^{-2ik} = -e^{-2ik}; the k-sum collapses to a
    // geometric ratio with a removable point at alpha = 1.
    const cplx alpha = -std::polar(1.0, -2.0 * k);
    cplx ratio;
    if (std::abs(1.0 - alpha) < 1e-8) {
        ratio = static_cast<double>(m - 1);
    } else {
        ratio = (alpha - int_pow(alpha, m)) / (1.0 - alpha);
    }
    const cplx val = unit_imag_pow(m) * std::polar(1.0, m * k) * ratio;
    return env * val.real();
}

double wigner_pole_cosine_form(int m, double k, const TimePoint& tp, int s0,
                               const WalkParams& params) {
    const double env = wigner_pole_envelope(m, tp, s0, params);
    double acc = 0.0;
    for (int n = 1; n <= m - 1; ++n)
        acc += std::cos(std::numbers::pi * m / 2.0 + std::numbers::pi * n + (m - 2.0 * n) * k);
    return env * acc;
}

double localization_length(double eta) {
    if (!std::isfinite(eta) || eta <= 1.0)
        throw RegimeError("localization_length: no localized mode at eta <= 1");
    return 1.0 / std::log(eta);
}

} // namespace qwsink
