#pragma once

#include <functional>

namespace erp {

inline constexpr int kMaxBisectionIterations = 55;

/// Bisection on a bracket [lo, hi] where g(lo) and g(hi) differ in sign (or
/// one of them is zero). Stops once the bracket is no wider than tol or after
/// kMaxBisectionIterations halvings, returning the bracket midpoint.
///
/// Throws NoBracket if the endpoint signs agree, NonFinite if g returns a
/// non-finite value, DomainError on an empty interval or nonpositive tol.
[[nodiscard]] double bracketed_root(const std::function<double(double)>& g, double lo, double hi,
                                    double tol);

}  // namespace erp
