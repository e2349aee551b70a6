#include "qwsink/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qwsink/errors.hpp"

namespace qwsink {
namespace {

// Downward recurrence J_{n-1} = (2n/x) J_n - J_{n+1} is stable below the
// start order; the start offset max(16, 10*sqrt(n_max + x)) leaves enough
// headroom that the seeded values have forgotten their (arbitrary) scale by
// the time order n_max is reached.  The sum rule J_0 + 2*sum J_{2k} = 1
// fixes the overall normalization.
std::vector<double> miller_row(double x, int n_max) {
    std::vector<double> j(static_cast<size_t>(n_max) + 1, 0.0);
    if (x == 0.0) {
        j[0] = 1.0;
        return j;
    }
    const int offset = std::max(16, static_cast<int>(std::ceil(10.0 * std::sqrt(n_max + x))));
    const int start = n_max + offset;
    std::vector<double> work(static_cast<size_t>(start) + 1, 0.0);

    double above = 0.0;            // J~_{n+1}
    double here = 1e-30;           // J~_n, arbitrary seed
    work[static_cast<size_t>(start)] = here;
    for (int n = start; n > 0; --n) {
        double below = (2.0 * n / x) * here - above;
        above = here;
        here = below;
        work[static_cast<size_t>(n - 1)] = here;
        if (std::abs(here) > 1e250) {
            for (int m = n - 1; m <= start; ++m) work[static_cast<size_t>(m)] *= 1e-250;
            above *= 1e-250;
            here *= 1e-250;
        }
    }

    double norm = work[0];
    for (int n = 2; n <= start; n += 2) norm += 2.0 * work[static_cast<size_t>(n)];
    const double inv = 1.0 / norm;
    for (int n = 0; n <= n_max; ++n) j[static_cast<size_t>(n)] = work[static_cast<size_t>(n)] * inv;
    return j;
}

} // namespace

BesselRow bessel_j_row(double x, int n_max) {
    if (!std::isfinite(x) || x < 0.0)
        throw std::invalid_argument("bessel_j_row: x must be finite and >= 0, got " +
                                    std::to_string(x));
    if (n_max < 0) throw std::invalid_argument("bessel_j_row: n_max must be >= 0");
    BesselRow row;
    row.x = x;
    row.n_max = n_max;
    row.values = miller_row(x, n_max);
    return row;
}

double bessel_j(int n, double x) {
    const int a = n >= 0 ? n : -n;
    BesselRow row = bessel_j_row(x, a);
    double v = row.values[static_cast<size_t>(a)];
    return (n < 0 && (a & 1)) ? -v : v;
}

namespace detail {

void BesselCache::ensure(int n_max) {
    if (have_ && n_max <= row_.n_max) return;
    int target = n_max;
    if (have_) target = std::max(target, row_.n_max + row_.n_max / 2);
    target += 32; // batch headroom so adaptive series rarely re-trigger
    row_ = bessel_j_row(x_, target);
    have_ = true;
}

} // namespace detail
} // namespace qwsink
