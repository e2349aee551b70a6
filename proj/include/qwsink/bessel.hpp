#pragma once

#include <vector>

namespace qwsink {

/// Contiguous block of Bessel values J_0(x) .. J_{n_max}(x) at fixed argument.
struct BesselRow {
    double x = 0.0;
    int n_max = 0;
    std::vector<double> values; ///< values[n] = J_n(x), 0 <= n <= n_max

    double at(int n) const { return values[static_cast<size_t>(n)]; }
    /// J_n(x) for any integer order, via J_{-n} = (-1)^n J_n.
    double signed_at(int n) const {
        if (n >= 0) return values[static_cast<size_t>(n)];
        return (n & 1) ? -values[static_cast<size_t>(-n)] : values[static_cast<size_t>(-n)];
    }
};

/// All of J_0(x)..J_{n_max}(x) by downward (Miller) recurrence with
/// sum-rule normalization.  Absolute accuracy ~1e-14 for the x range used
/// here (x <= a few hundred).  Rejects x < 0 and non-finite input.
BesselRow bessel_j_row(double x, int n_max);

/// Single value J_n(x), any integer n, x >= 0.
double bessel_j(int n, double x);

namespace detail {

/// Reusable row that grows on demand.  Propagator series walk through
/// orders adaptively; the cache recomputes the underlying row only when a
/// higher order is first requested.
class BesselCache {
  public:
    explicit BesselCache(double x) : x_(x) {}

    double j(int n) {
        int a = n >= 0 ? n : -n;
        ensure(a);
        double v = row_.values[static_cast<size_t>(a)];
        return (n < 0 && (a & 1)) ? -v : v;
    }
    double x() const { return x_; }
    void ensure(int n_max);

  private:
    double x_;
    BesselRow row_;
    bool have_ = false;
};

} // namespace detail
} // namespace qwsink
