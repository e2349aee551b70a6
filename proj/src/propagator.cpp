#include "qwsink/propagator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qwsink {
namespace {

// Below this the (2m/x) J_m(x) form is numerically indeterminate; the
// recurrence-equivalent J_{m-1} + J_{m+1} is summed instead.
constexpr double kSmallX = 1e-8;

void check_sites(int s, int s0, const char* who) {
    if (s < 1 || s0 < 1)
        throw std::invalid_argument(std::string(who) + ": sites must be >= 1");
}

cplx phase_factor(double x) { return {std::cos(x), -std::sin(x)}; } // e^{-ix}

} // namespace

namespace detail {

// S = 2 eta sum_{r>=0} (-eta)^r ((N+r)/x) J_{N+r}(x).  All factors real.
// The alternating tail is dominated by the Bessel decay once the order
// passes the turning point, so the stop rule demands N+r > x + 10 on top of
// the relative smallness of the current term.
SeriesSum weak_boundary_series(int N, double eta, BesselCache& jc, const SeriesConfig& cfg) {
    SeriesSum out;
    if (eta == 0.0) return out;
    const double x = jc.x();
    if (x == 0.0) return out; // every J_{N+r+-1}(0) with N >= 2 vanishes
    const bool tiny_x = x < kSmallX;

    double sum = 0.0;
    double scale = 1e-300;
    double sign_pow = 1.0; // (-eta)^r
    for (int r = 0;; ++r) {
        const int m = N + r;
        jc.ensure(m + 1);
        const double term = tiny_x
            ? eta * sign_pow * (jc.j(m - 1) + jc.j(m + 1))
            : 2.0 * eta * sign_pow * (static_cast<double>(m) / x) * jc.j(m);
        sum += term;
        ++out.terms;
        if (std::abs(sum) > scale) scale = std::abs(sum);
        if (m > x + 10.0 && std::abs(term) < cfg.tol * scale) break;
        if (out.terms >= cfg.max_terms)
            throw ConvergenceError("weak_boundary_series: no convergence after " +
                                   std::to_string(cfg.max_terms) + " terms (N=" +
                                   std::to_string(N) + ", x=" + std::to_string(x) + ")");
        sign_pow *= -eta;
    }
    out.value = sum;
    return out;
}

// S = 2 sum_{r>=1} (-1)^{r+1} eta^{1-r} ((N-r)/x) J_{N-r}(x), descending
// orders through zero into the reflected side.  Two independent exits:
// the geometric bound 2 eta^{1-r} (|N-r|+x)/x (uses |J| <= 1) handles large
// eta, and the Bessel-decay exit r-N > x+10 handles eta barely above 1,
// where the eta powers alone never shrink.
SeriesSum strong_boundary_series(int N, double eta, BesselCache& jc, const SeriesConfig& cfg) {
    SeriesSum out;
    const double x = jc.x();
    const bool tiny_x = x < kSmallX;

    double sum = 0.0;
    double scale = 1e-300;
    double eta_pow = 1.0; // eta^{1-r}
    double sign = 1.0;    // (-1)^{r+1}
    for (int r = 1;; ++r) {
        const int m = N - r;
        jc.ensure(std::abs(m) + 1);
        const double term = tiny_x
            ? sign * eta_pow * (jc.j(m - 1) + jc.j(m + 1))
            : 2.0 * sign * eta_pow * (static_cast<double>(m) / x) * jc.j(m);
        sum += term;
        ++out.terms;
        if (std::abs(sum) > scale) scale = std::abs(sum);
        const bool past_cone = (r - N > x + 10.0) && std::abs(term) < cfg.tol * scale;
        const bool geometric = !tiny_x &&
            2.0 * eta_pow * ((std::abs(m) + x) / x) < cfg.tol * scale;
        if (past_cone || geometric) break;
        if (out.terms >= cfg.max_terms)
            throw ConvergenceError("strong_boundary_series: no convergence after " +
                                   std::to_string(cfg.max_terms) + " terms (N=" +
                                   std::to_string(N) + ", x=" + std::to_string(x) + ")");
        eta_pow /= eta;
        sign = -sign;
    }
    out.value = sum;
    return out;
}

} // namespace detail

namespace {

cplx hard_wall_from_cache(int s, int s0, double x, detail::BesselCache& jc) {
    jc.ensure(s + s0);
    const double jd = jc.j(s - s0);
    const double js = jc.j(s + s0);
    return phase_factor(x) * (unit_imag_pow(s - s0) * jd - unit_imag_pow(s + s0) * js);
}

cplx weak_from_cache(int s, int s0, double x, double eta, detail::BesselCache& jc,
                     const SeriesConfig& cfg) {
    const cplx direct = hard_wall_from_cache(s, s0, x, jc);
    if (eta == 0.0) return direct;
    const detail::SeriesSum ser = detail::weak_boundary_series(s + s0, eta, jc, cfg);
    return direct + phase_factor(x) * unit_imag_pow(s + s0) * ser.value;
}

cplx strong_cont_from_cache(int s, int s0, double x, double eta, detail::BesselCache& jc,
                            const SeriesConfig& cfg) {
    const cplx direct = hard_wall_from_cache(s, s0, x, jc);
    const detail::SeriesSum ser = detail::strong_boundary_series(s + s0, eta, jc, cfg);
    return direct + phase_factor(x) * unit_imag_pow(s + s0) * ser.value;
}

} // namespace

cplx hard_wall_propagator(int s, int s0, const TimePoint& tp, double omega) {
    check_sites(s, s0, "hard_wall_propagator");
    if (!std::isfinite(omega) || omega <= 0.0)
        throw std::invalid_argument("hard_wall_propagator: omega must be > 0");
    detail::BesselCache jc(tp.x);
    return hard_wall_from_cache(s, s0, tp.x, jc);
}

cplx weak_propagator(int s, int s0, const TimePoint& tp, const WalkParams& params,
                     const SeriesConfig& cfg) {
    check_sites(s, s0, "weak_propagator");
    if (params.eta > 1.0)
        throw RegimeError("weak_propagator: eta = " + std::to_string(params.eta) +
                          " > 1, use strong_continuum + pole_propagator");
    if (tp.t == 0.0) return s == s0 ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
    detail::BesselCache jc(tp.x);
    return weak_from_cache(s, s0, tp.x, params.eta, jc, cfg);
}

cplx strong_continuum(int s, int s0, const TimePoint& tp, const WalkParams& params,
                      const SeriesConfig& cfg) {
    check_sites(s, s0, "strong_continuum");
    if (params.eta <= 1.0)
        throw RegimeError("strong_continuum: eta = " + std::to_string(params.eta) +
                          " <= 1, use weak_propagator");
    detail::BesselCache jc(tp.x);
    return strong_cont_from_cache(s, s0, tp.x, params.eta, jc, cfg);
}

cplx pole_propagator(int s, int s0, const TimePoint& tp, const WalkParams& params) {
    check_sites(s, s0, "pole_propagator");
    auto pole = boundary_pole(params);
    if (!pole)
        throw RegimeError("pole_propagator: no boundary resonance at eta = " +
                          std::to_string(params.eta));
    // e^{-i z_p t} = e^{-gamma_p t / 2} e^{-i x}
    const cplx decay = std::exp(cplx{-0.5 * pole->gamma_p * tp.t, -tp.x});
    return pole->residue_prefactor * int_pow(pole->q_p, s + s0 - 2) * decay;
}

cplx propagator(int s, int s0, const TimePoint& tp, const WalkParams& params,
                const SeriesConfig& cfg) {
    check_sites(s, s0, "propagator");
    if (tp.t == 0.0) return s == s0 ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
    if (params.eta <= 1.0) return weak_propagator(s, s0, tp, params, cfg);
    return strong_continuum(s, s0, tp, params, cfg) + pole_propagator(s, s0, tp, params);
}

std::vector<cplx> propagator_column(int s0, const TimePoint& tp, const WalkParams& params,
                                    int s_max, const SeriesConfig& cfg) {
    check_sites(s_max, s0, "propagator_column");
    std::vector<cplx> col(static_cast<size_t>(s_max));
    if (tp.t == 0.0) {
        if (s0 <= s_max) col[static_cast<size_t>(s0 - 1)] = 1.0;
        return col;
    }
    detail::BesselCache jc(tp.x);
    jc.ensure(s_max + s0 + 1);
    const bool strong = params.eta > 1.0;
    for (int s = 1; s <= s_max; ++s) {
        cplx v = strong ? strong_cont_from_cache(s, s0, tp.x, params.eta, jc, cfg) +
                              pole_propagator(s, s0, tp, params)
                        : weak_from_cache(s, s0, tp.x, params.eta, jc, cfg);
        col[static_cast<size_t>(s - 1)] = v;
    }
    return col;
}

AmplitudeVector propagate_state(const AmplitudeVector& initial, const TimePoint& tp,
                                const WalkParams& params, const SeriesConfig& cfg) {
    int support = 0;
    for (int s = initial.size(); s >= 1; --s) {
        if (initial.values[static_cast<size_t>(s - 1)] != cplx{0.0, 0.0}) {
            support = s;
            break;
        }
    }
    if (support == 0)
        throw std::invalid_argument("propagate_state: initial state has empty support");
    if (std::abs(initial.norm2() - 1.0) > 1e-10)
        throw std::invalid_argument("propagate_state: initial state must be normalized");

    const int L_out = support + static_cast<int>(std::ceil(tp.x)) + 20;
    std::vector<cplx> out(static_cast<size_t>(L_out), cplx{0.0, 0.0});
    for (int u = 1; u <= support; ++u) {
        const cplx a = initial.values[static_cast<size_t>(u - 1)];
        if (a == cplx{0.0, 0.0}) continue;
        const std::vector<cplx> col = propagator_column(u, tp, params, L_out, cfg);
        for (int s = 1; s <= L_out; ++s)
            out[static_cast<size_t>(s - 1)] += a * col[static_cast<size_t>(s - 1)];
    }
    return {std::move(out), params};
}

} // namespace qwsink
