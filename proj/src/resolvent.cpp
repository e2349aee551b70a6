#include "qwsink/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qwsink {

WalkParams::WalkParams(double omega_, double kappa_) : omega(omega_), kappa(kappa_) {
    if (!std::isfinite(omega) || omega <= 0.0)
        throw std::invalid_argument("WalkParams: omega must be finite and > 0");
    if (!std::isfinite(kappa) || kappa < 0.0)
        throw std::invalid_argument("WalkParams: kappa must be finite and >= 0");
    eta = kappa / omega;
}

TimePoint::TimePoint(double t_, double omega) : t(t_) {
    if (!std::isfinite(t) || t < 0.0)
        throw std::invalid_argument("TimePoint: t must be finite and >= 0");
    if (!std::isfinite(omega) || omega <= 0.0)
        throw std::invalid_argument("TimePoint: omega must be finite and > 0");
    x = omega * t;
}

double AmplitudeVector::norm2() const {
    double n = 0.0;
    for (const cplx& a : values) n += std::norm(a);
    return n;
}

cplx int_pow(cplx base, long long n) {
    if (n < 0) return 1.0 / int_pow(base, -n);
    cplx acc{1.0, 0.0};
    cplx p = base;
    while (n > 0) {
        if (n & 1) acc *= p;
        p *= p;
        n >>= 1;
    }
    return acc;
}

namespace {

std::string cplx_str(cplx v) {
    std::ostringstream os;
    os << "(" << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i)";
    return os.str();
}

} // namespace

SpectralVariable q_of_z(cplx z, double omega, CutSide side) {
    if (!std::isfinite(omega) || omega <= 0.0)
        throw std::invalid_argument("q_of_z: omega must be finite and > 0");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("q_of_z: z must be finite");

    if (z.imag() == 0.0) {
        const double E = z.real();
        if (E == 0.0 || E == 2.0 * omega)
            throw DegenerateBranchError("q_of_z: band edge z = " + cplx_str(z) +
                                        ", branch roots coincide at q = +-1");
        if (E > 0.0 && E < 2.0 * omega) {
            if (side == CutSide::OffCut)
                throw std::invalid_argument(
                    "q_of_z: z = " + cplx_str(z) +
                    " lies on the band; pass CutSide::AbovePlus or CutSide::BelowMinus");
            const double c = std::clamp((omega - E) / omega, -1.0, 1.0);
            const double k = std::acos(c);
            const double sign = (side == CutSide::AbovePlus) ? 1.0 : -1.0;
            return {z, std::polar(1.0, sign * k), side};
        }
    }

    // Quadratic q^2 - 2 b q + 1 = 0 with b = (omega - z)/omega; the roots are
    // q and 1/q.  Build the large root without cancellation, invert.
    const cplx b = (omega - z) / omega;
    cplx disc = std::sqrt(b * b - 1.0);
    if (std::real(std::conj(b) * disc) < 0.0) disc = -disc;
    const cplx q = 1.0 / (b + disc);
    if (!(std::abs(q) < 1.0))
        throw DegenerateBranchError("q_of_z: no strictly decaying branch at z = " + cplx_str(z));
    return {z, q, CutSide::OffCut};
}

cplx z_of_q(cplx q, double omega) {
    return omega * (1.0 - 0.5 * (q + 1.0 / q));
}

cplx g_line(int n, const SpectralVariable& sv, double omega) {
    const cplx q = sv.q;
    const cplx denom = 1.0 - q * q;
    if (std::abs(denom) < 1e-12)
        throw DegenerateBranchError("g_line: 1 - q^2 vanishes (band edge), q = " + cplx_str(q));
    const long long m = n >= 0 ? n : -static_cast<long long>(n);
    return -(2.0 / omega) * int_pow(q, m + 1) / denom;
}

cplx green_hard_wall(int s, int s0, const SpectralVariable& sv, double omega) {
    if (s < 1 || s0 < 1)
        throw std::invalid_argument("green_hard_wall: sites must be >= 1");
    return g_line(s - s0, sv, omega) - g_line(s + s0, sv, omega);
}

cplx green_absorbing(int s, int s0, const SpectralVariable& sv, const WalkParams& params) {
    if (s < 1 || s0 < 1)
        throw std::invalid_argument("green_absorbing: sites must be >= 1");
    const cplx q = sv.q;
    const double eta = params.eta;
    const cplx denom = 1.0 - cplx{0.0, eta} * q;
    if (std::abs(denom) < 1e-10) {
        std::string where = eta > 1.0
            ? " (boundary resonance at z_p = " +
                  cplx_str(boundary_pole(params)->z_p) + ")"
            : " (edge of the physical branch)";
        throw PoleEvaluationError("green_absorbing: 1 - i eta q vanishes at z = " +
                                  cplx_str(sv.z) + where);
    }
    const cplx defect =
        -(2.0 * cplx{0.0, eta} / params.omega) * int_pow(q, s + s0) / denom;
    return green_hard_wall(s, s0, sv, params.omega) + defect;
}

std::optional<PoleData> boundary_pole(const WalkParams& params) {
    if (params.eta <= 1.0) return std::nullopt;
    PoleData p;
    p.q_p = cplx{0.0, -1.0 / params.eta};
    p.gamma_p = params.kappa - params.omega * params.omega / params.kappa;
    p.z_p = cplx{params.omega, -0.5 * p.gamma_p};
    p.residue_prefactor = 1.0 - p.q_p * p.q_p;
    return p;
}

} // namespace qwsink
