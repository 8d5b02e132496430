#include "erp/math/root.hpp"

#include <cmath>
#include <sstream>

#include "erp/error.hpp"

namespace erp {
namespace {

double checked(const std::function<double(double)>& g, double x) {
    const double y = g(x);
    if (!std::isfinite(y)) {
        std::ostringstream os;
        os << "root function returned " << y << " at " << x;
        throw NonFinite(os.str());
    }
    return y;
}

}  // namespace

double bracketed_root(const std::function<double(double)>& g, double lo, double hi, double tol) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("bracketed_root needs a finite interval with lo < hi");
    }
    if (!(tol > 0.0)) {
        throw DomainError("bracketed_root needs tol > 0");
    }
    const double g_lo = checked(g, lo);
    if (g_lo == 0.0) return lo;
    const double g_hi = checked(g, hi);
    if (g_hi == 0.0) return hi;
    if ((g_lo > 0.0) == (g_hi > 0.0)) {
        std::ostringstream os;
        os << "no sign change on [" << lo << ", " << hi << "]: g(lo)=" << g_lo << ", g(hi)=" << g_hi;
        throw NoBracket(os.str());
    }
    const bool rising = g_lo < 0.0;
    for (int it = 0; it < kMaxBisectionIterations && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = checked(g, mid);
        if (g_mid == 0.0) return mid;
        if ((g_mid < 0.0) == rising) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace erp
