#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qwsink/errors.hpp"

namespace qwsink {

using cplx = std::complex<double>;

/// Model parameters for the half-line walk with a lossy first site.
///
/// The Hamiltonian is H = Omega * sum_s |s><s| - (Omega/2) * sum_s (|s><s+1| + h.c.)
/// on sites s >= 1, and the loss enters as the non-Hermitian term
/// -(i*kappa/2)|1><1|.  eta = kappa/Omega is the only dimensionless knob:
/// eta < 1 is the weak-absorption regime, eta > 1 the strong one.
struct WalkParams {
    double omega = 1.0; ///< hopping scale, > 0
    double kappa = 0.0; ///< absorption rate at site 1, >= 0
    double eta = 0.0;   ///< kappa / omega

    WalkParams() = default;
    WalkParams(double omega_, double kappa_);
};

/// A single evolution time together with its dimensionless version x = Omega*t.
struct TimePoint {
    double t = 0.0;
    double x = 0.0; ///< Omega * t

    TimePoint() = default;
    TimePoint(double t_, double omega);
};

/// Truncation control for the boundary-scattering series.
struct SeriesConfig {
    double tol = 1e-12;    ///< relative tail target
    int max_terms = 10000; ///< hard cap before giving up
};

/// Wavefunction on sites 1..size().  amplitude(s) is the component on site s.
struct AmplitudeVector {
    std::vector<cplx> values; ///< values[i] lives on site i+1
    WalkParams params;

    AmplitudeVector() = default;
    AmplitudeVector(std::vector<cplx> v, const WalkParams& p)
        : values(std::move(v)), params(p) {}

    int size() const { return static_cast<int>(values.size()); }
    cplx amplitude(int site) const { return values.at(static_cast<size_t>(site - 1)); }
    double norm2() const;
};

/// Unit-modulus integer power of i, by exponent mod 4.
inline cplx unit_imag_pow(long long n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

/// Integer power by binary exponentiation; exact for axis-aligned bases.
cplx int_pow(cplx base, long long n);

} // namespace qwsink
