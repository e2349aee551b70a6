#include "qwsink/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace qwsink::oracle {
namespace {

constexpr double kWallTol = 1e-12; // allowed amplitude at the far wall

Eigen::MatrixXcd dense(const TruncatedHamiltonian& H) {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(H.L, H.L);
    for (int i = 0; i < H.L; ++i) M(i, i) = H.diag[static_cast<size_t>(i)];
    for (int i = 0; i + 1 < H.L; ++i) {
        M(i, i + 1) = H.offdiag[static_cast<size_t>(i)];
        M(i + 1, i) = H.offdiag[static_cast<size_t>(i)];
    }
    return M;
}

// y <- -i H psi for the tridiagonal H, the right-hand side of the
// Schroedinger equation d psi/dt = -i H psi.
void apply_rhs(const TruncatedHamiltonian& H, const std::vector<cplx>& psi,
               std::vector<cplx>& y) {
    const int L = H.L;
    for (int i = 0; i < L; ++i) {
        cplx acc = H.diag[static_cast<size_t>(i)] * psi[static_cast<size_t>(i)];
        if (i > 0) acc += H.offdiag[static_cast<size_t>(i - 1)] * psi[static_cast<size_t>(i - 1)];
        if (i + 1 < L) acc += H.offdiag[static_cast<size_t>(i)] * psi[static_cast<size_t>(i + 1)];
        y[static_cast<size_t>(i)] = cplx{0.0, -1.0} * acc;
    }
}

std::vector<cplx> padded(const AmplitudeVector& initial, int L, const char* who) {
    if (initial.size() > L)
        throw std::invalid_argument(std::string(who) + ": initial support exceeds L");
    std::vector<cplx> psi(static_cast<size_t>(L), cplx{0.0, 0.0});
    for (int i = 0; i < initial.size(); ++i)
        psi[static_cast<size_t>(i)] = initial.values[static_cast<size_t>(i)];
    return psi;
}

void check_wall(const std::vector<cplx>& psi, const char* who) {
    if (std::abs(psi.back()) >= kWallTol) {
        std::ostringstream os;
        os << who << ": amplitude " << std::abs(psi.back())
           << " reached the far wall; rerun with a larger L";
        throw TruncationError(os.str());
    }
}

} // namespace

TruncatedHamiltonian build_truncated(int L, const WalkParams& params) {
    if (L < 2) throw std::invalid_argument("build_truncated: L must be >= 2");
    TruncatedHamiltonian H;
    H.L = L;
    H.params = params;
    H.diag.assign(static_cast<size_t>(L), cplx{params.omega, 0.0});
    H.diag[0] = cplx{params.omega, -0.5 * params.kappa};
    H.offdiag.assign(static_cast<size_t>(L - 1), -0.5 * params.omega);
    return H;
}

std::vector<cplx> spectrum(const TruncatedHamiltonian& H) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(dense(H), false);
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

int default_truncation(int max_site, double x) {
    return max_site + static_cast<int>(std::ceil(x)) + 40;
}

AmplitudeVector evolve_oracle(const AmplitudeVector& initial, const TimePoint& tp,
                              int L, double tol) {
    if (!(tol > 0.0) || tol > 1e-10)
        throw std::invalid_argument("evolve_oracle: tol must be in (0, 1e-10]");
    const TruncatedHamiltonian H = build_truncated(L, initial.params);
    std::vector<cplx> psi = padded(initial, L, "evolve_oracle");
    if (tp.t == 0.0) return {std::move(psi), initial.params};

    // Dormand-Prince 5(4).  Stage nodes are irrelevant (autonomous system).
    static const double A[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
    };
    static const double B5[7] = {35.0 / 384,     0.0,  500.0 / 1113, 125.0 / 192,
                                 -2187.0 / 6784, 11.0 / 84, 0.0};
    static const double B4[7] = {5179.0 / 57600,    0.0,         7571.0 / 16695, 393.0 / 640,
                                 -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

    const double rtol = tol * 1e-2;
    const double atol = tol * 1e-4;
    const size_t n = psi.size();
    std::vector<std::vector<cplx>> k(7, std::vector<cplx>(n));
    std::vector<cplx> stage(n), y5(n), y4(n);

    const double scale = std::max(initial.params.omega, initial.params.kappa);
    double h = std::min(0.05 / scale, tp.t);
    double t = 0.0;
    double prev_norm2 = 0.0;
    for (const cplx& a : psi) prev_norm2 += std::norm(a);
    const bool lossy = initial.params.kappa > 0.0;

    apply_rhs(H, psi, k[0]);
    int steps = 0;
    while (t < tp.t) {
        if (h < 1e-14 * std::max(1.0, tp.t))
            throw ConvergenceError("evolve_oracle: step size underflow at t = " +
                                   std::to_string(t));
        if (t + h > tp.t) h = tp.t - t;
        for (int i = 1; i < 7; ++i) {
            for (size_t j = 0; j < n; ++j) {
                cplx acc = psi[j];
                for (int l = 0; l < i; ++l) acc += h * A[i][l] * k[static_cast<size_t>(l)][j];
                stage[j] = acc;
            }
            apply_rhs(H, stage, k[static_cast<size_t>(i)]);
        }
        double err2 = 0.0;
        for (size_t j = 0; j < n; ++j) {
            cplx acc5 = psi[j], acc4 = psi[j];
            for (int i = 0; i < 7; ++i) {
                acc5 += h * B5[i] * k[static_cast<size_t>(i)][j];
                acc4 += h * B4[i] * k[static_cast<size_t>(i)][j];
            }
            y5[j] = acc5;
            y4[j] = acc4;
            const double w = atol + rtol * std::max(std::abs(psi[j]), std::abs(acc5));
            const double e = std::abs(acc5 - acc4) / w;
            err2 += e * e;
        }
        const double err = std::sqrt(err2 / static_cast<double>(n));
        if (err <= 1.0) {
            t += h;
            psi.swap(y5);
            apply_rhs(H, psi, k[0]); // not FSAL-reused across rejections; recompute
            check_wall(psi, "evolve_oracle");
            if (lossy) {
                double norm2 = 0.0;
                for (const cplx& a : psi) norm2 += std::norm(a);
                if (norm2 > prev_norm2 + 1e-12)
                    throw ConsistencyError("evolve_oracle: norm grew under kappa > 0");
                prev_norm2 = norm2;
            }
        }
        const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);
        if (++steps > 50'000'000)
            throw ConvergenceError("evolve_oracle: step budget exhausted");
    }
    return {std::move(psi), initial.params};
}

AmplitudeVector evolve_oracle_expm(const AmplitudeVector& initial, const TimePoint& tp, int L) {
    const TruncatedHamiltonian H = build_truncated(L, initial.params);
    std::vector<cplx> psi = padded(initial, L, "evolve_oracle_expm");
    const Eigen::MatrixXcd E = (cplx{0.0, -tp.t} * dense(H)).exp();
    Eigen::Map<const Eigen::VectorXcd> v(psi.data(), L);
    Eigen::VectorXcd out = E * v;
    std::vector<cplx> res(out.data(), out.data() + L);
    check_wall(res, "evolve_oracle_expm");
    return {std::move(res), initial.params};
}

ExpmStepper::ExpmStepper(int L, const WalkParams& params, double dt) : L_(L) {
    const Eigen::MatrixXcd E = (cplx{0.0, -dt} * dense(build_truncated(L, params))).exp();
    step_.assign(static_cast<size_t>(L) * L, cplx{0.0, 0.0});
    for (int r = 0; r < L; ++r)
        for (int c = 0; c < L; ++c)
            step_[static_cast<size_t>(r) * L + static_cast<size_t>(c)] = E(r, c);
}

void ExpmStepper::advance(std::vector<cplx>& psi) const {
    if (static_cast<int>(psi.size()) != L_)
        throw std::invalid_argument("ExpmStepper: state size mismatch");
    std::vector<cplx> out(static_cast<size_t>(L_), cplx{0.0, 0.0});
    for (int r = 0; r < L_; ++r) {
        cplx acc{0.0, 0.0};
        const cplx* row = step_.data() + static_cast<size_t>(r) * L_;
        for (int c = 0; c < L_; ++c) acc += row[c] * psi[static_cast<size_t>(c)];
        out[static_cast<size_t>(r)] = acc;
    }
    psi.swap(out);
    check_wall(psi, "ExpmStepper::advance");
}

cplx oracle_resolvent(int s, int s0, cplx z, const WalkParams& params, int L) {
    if (s < 1 || s0 < 1 || s > L || s0 > L)
        throw std::invalid_argument("oracle_resolvent: need 1 <= s, s0 <= L");
    const TruncatedHamiltonian H = build_truncated(L, params);
    Eigen::MatrixXcd M = -dense(H);
    for (int i = 0; i < L; ++i) M(i, i) += z;
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(L);
    rhs(s0 - 1) = 1.0;
    const Eigen::VectorXcd g = M.partialPivLu().solve(rhs);
    const double resid = (M * g - rhs).cwiseAbs().maxCoeff();
    if (!(resid < 1e-12)) {
        double dist = std::numeric_limits<double>::infinity();
        for (const cplx& ev : spectrum(H)) dist = std::min(dist, std::abs(z - ev));
        std::ostringstream os;
        os << "oracle_resolvent: residual " << resid << " too large; z is " << dist
           << " away from the nearest eigenvalue of the truncated generator";
        throw ConvergenceError(os.str());
    }
    return g(s - 1);
}

double bessel_oracle(int n, double x) {
    if (n < 0 || n > 60) throw std::invalid_argument("bessel_oracle: need 0 <= n <= 60");
    if (!std::isfinite(x) || x < 0.0 || x > 100.0)
        throw std::invalid_argument("bessel_oracle: need 0 <= x <= 100");
    // (1/pi) int_0^pi cos(n theta - x sin theta) d theta.  The integrand
    // extends to an even, 2pi-periodic entire function, so the trapezoid
    // rule converges spectrally; panel counts double until two levels agree.
    const auto value = [n, x](int M) {
        double acc = 0.5 * (1.0 + std::cos(n * std::numbers::pi)); // theta = 0 and pi
        for (int j = 1; j < M; ++j) {
            const double th = std::numbers::pi * j / M;
            acc += std::cos(n * th - x * std::sin(th));
        }
        return acc / M;
    };
    int M = std::max(32, static_cast<int>(std::ceil((n + x) / 2.0)) + 24);
    double prev = value(M);
    for (int it = 0; it < 20; ++it) {
        M *= 2;
        const double next = value(M);
        if (std::abs(next - prev) < 5e-15) return next;
        prev = next;
    }
    throw ConvergenceError("bessel_oracle: quadrature failed to settle");
}

} // namespace qwsink::oracle
