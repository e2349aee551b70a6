#include "qwsink/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qwsink {
namespace {

// 16-point Gauss-Legendre abscissas/weights on (-1, 1), positive half.
constexpr int kGL = 16;
constexpr double kGLx[kGL / 2] = {
    0.0950125098376374402, 0.2816035507792589132, 0.4580167776572273863,
    0.6178762444026437484, 0.7554044083550030339, 0.8656312023878317439,
    0.9445750230732325761, 0.9894009349916499326,
};
constexpr double kGLw[kGL / 2] = {
    0.1894506104550684963, 0.1826034150449235889, 0.1691565193950025382,
    0.1495959888165767320, 0.1246289712555338720, 0.0951585116824927848,
    0.0622535239386478929, 0.0271524594117540949,
};

template <typename F>
double gl_panels(const F& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        double local = 0.0;
        for (int i = 0; i < kGL / 2; ++i) {
            const double d = 0.5 * h * kGLx[i];
            local += kGLw[i] * (f(mid - d) + f(mid + d));
        }
        acc += 0.5 * h * local;
    }
    return acc;
}

int cone_cutoff(int s0, double x) { return s0 + static_cast<int>(std::ceil(x)) + 20; }

} // namespace

ScatteringMode classify_regime(double eta) {
    if (eta < 1.0) return ScatteringMode::Weak;
    if (eta > 1.0) return ScatteringMode::Strong;
    return ScatteringMode::Critical;
}

double survival(int s0, const TimePoint& tp, const WalkParams& params,
                const SeriesConfig& cfg, int site_cutoff) {
    if (s0 < 1) throw std::invalid_argument("survival: s0 must be >= 1");
    const int s_max = site_cutoff > 0 ? site_cutoff : cone_cutoff(s0, tp.x);
    const std::vector<cplx> col = propagator_column(s0, tp, params, s_max, cfg);
    double acc = 0.0;
    for (const cplx& a : col) acc += std::norm(a);
    return acc;
}

double first_passage_density(int s0, const TimePoint& tp, const WalkParams& params,
                             const SeriesConfig& cfg) {
    if (s0 < 1) throw std::invalid_argument("first_passage_density: s0 must be >= 1");
    return params.kappa * std::norm(propagator(1, s0, tp, params, cfg));
}

cplx reflection_amplitude(double k, double eta) {
    if (!std::isfinite(k) || k <= 0.0 || k >= std::numbers::pi)
        throw std::invalid_argument("reflection_amplitude: k must lie in (0, pi)");
    if (!std::isfinite(eta) || eta < 0.0)
        throw std::invalid_argument("reflection_amplitude: eta must be >= 0");
    const cplx eik = std::polar(1.0, k);
    const cplx ie{0.0, eta};
    return -(eik - ie) / (std::conj(eik) - ie);
}

double absorption_fraction(double k, double eta) {
    if (!std::isfinite(k) || k < 0.0 || k > std::numbers::pi)
        throw std::invalid_argument("absorption_fraction: k must lie in [0, pi]");
    if (!std::isfinite(eta) || eta < 0.0)
        throw std::invalid_argument("absorption_fraction: eta must be >= 0");
    const double sk = std::sin(k);
    return 4.0 * eta * sk / (1.0 + eta * eta + 2.0 * eta * sk);
}

double absorption_probability(int s0, double eta, const QuadratureConfig& qcfg) {
    if (s0 < 1) throw std::invalid_argument("absorption_probability: s0 must be >= 1");
    if (!std::isfinite(eta) || eta < 0.0)
        throw std::invalid_argument("absorption_probability: eta must be >= 0");
    if (eta == 0.0) return 0.0;

    const auto f = [s0, eta](double k) {
        const double s = std::sin(s0 * k);
        return s * s * absorption_fraction(k, eta) / std::numbers::pi;
    };
    // sin^2(s0 k) completes s0 oscillations on (0, pi); resolve each with at
    // least 4 panels, then double until two levels agree.
    int panels = std::max({qcfg.base_nodes / kGL + 1, 4 * s0, 4});
    double prev = gl_panels(f, 0.0, std::numbers::pi, panels);
    for (int it = 0; it < qcfg.max_refinements; ++it) {
        panels *= 2;
        const double next = gl_panels(f, 0.0, std::numbers::pi, panels);
        const double diff = std::abs(next - prev);
        if (diff < qcfg.abs_tol) return next;
        prev = next;
    }
    std::ostringstream os;
    os << "absorption_probability: quadrature not converged to " << qcfg.abs_tol << " after "
       << qcfg.max_refinements << " refinements (s0=" << s0 << ", eta=" << eta << ")";
    throw ConvergenceError(os.str());
}

double absorption_probability_timedomain(int s0, const WalkParams& params, double t_max,
                                         const SeriesConfig& cfg) {
    if (!(t_max * params.omega >= 1.0))
        throw std::invalid_argument(
            "absorption_probability_timedomain: need Omega * t_max >= 1");
    return 1.0 - survival(s0, TimePoint(t_max, params.omega), params, cfg);
}

} // namespace qwsink
