#pragma once

#include <span>

namespace erp::hjb {

/// Thomas algorithm for lower[k] x[k-1] + diag[k] x[k] + upper[k] x[k+1] = rhs[k].
/// lower[0] and upper[n-1] are ignored. The solution overwrites rhs; scratch
/// must hold n values. Returns false if any row is not weakly diagonally
/// dominant (the solve still runs).
bool solve_tridiagonal(std::span<const double> lower, std::span<const double> diag, std::span<const double> upper,
                       std::span<double> rhs, std::span<double> scratch);

}  // namespace erp::hjb
