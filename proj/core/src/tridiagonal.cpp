#include "erp/hjb/tridiagonal.hpp"

#include <cmath>

namespace erp::hjb {

bool solve_tridiagonal(std::span<const double> lower, std::span<const double> diag, std::span<const double> upper,
                       std::span<double> rhs, std::span<double> scratch) {
    const std::size_t n = diag.size();
    if (n == 0) return true;
    bool dominant = true;
    for (std::size_t k = 0; k < n; ++k) {
        const double off = (k > 0 ? std::abs(lower[k]) : 0.0) + (k + 1 < n ? std::abs(upper[k]) : 0.0);
        if (std::abs(diag[k]) < off) dominant = false;
    }
    double beta = diag[0];
    rhs[0] /= beta;
    for (std::size_t k = 1; k < n; ++k) {
        scratch[k] = upper[k - 1] / beta;
        beta = diag[k] - lower[k] * scratch[k];
        rhs[k] = (rhs[k] - lower[k] * rhs[k - 1]) / beta;
    }
    for (std::size_t k = n - 1; k-- > 0;) {
        rhs[k] -= scratch[k + 1] * rhs[k + 1];
    }
    return dominant;
}

}  // namespace erp::hjb
