#pragma once

#include <cmath>
#include <numbers>

namespace erp {

/// Standard normal density.
[[nodiscard]] inline double std_normal_pdf(double x) noexcept {
    constexpr double inv_sqrt_2pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

/// Standard normal distribution function via the complementary error
/// function, accurate to ~1e-16 relative in both tails.
[[nodiscard]] inline double std_normal_cdf(double x) noexcept {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

}  // namespace erp
