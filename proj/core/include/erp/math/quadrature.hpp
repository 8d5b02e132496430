#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace erp {

inline constexpr std::size_t kDefaultQuadratureNodes = 200;

/// Nodes and weights for E[f(X)], X ~ N(0,1): sum_k w_k f(x_k) with sum w_k = 1.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Hermite rule for the weight e^{-x^2/2}/sqrt(2 pi). Rules are cached
/// per node count; the returned reference stays valid for program lifetime.
[[nodiscard]] const GaussRule& gauss_hermite_rule(std::size_t n_nodes);

/// Gauss-Legendre nodes/weights on [-1, 1] (weights sum to 2), cached.
[[nodiscard]] const GaussRule& gauss_legendre_rule(std::size_t n_nodes);

/// (1/sqrt(2 pi)) * integral of f(x) e^{-x^2/2} over the real line.
///
/// Without breakpoints the Gauss-Hermite rule is applied directly. With
/// breakpoints (the preimages of payoff kinks) the line is truncated to
/// [-kTail, kTail] and each smooth piece is integrated with an n-point
/// Gauss-Legendre rule against the Gaussian density.
///
/// Throws NonFinite if f returns NaN or infinity at any node.
[[nodiscard]] double gauss_weighted_integral(const std::function<double(double)>& f,
                                             std::size_t n_nodes = kDefaultQuadratureNodes,
                                             std::span<const double> breakpoints = {});

/// Half-width of the truncated line used by the piecewise rule.
inline constexpr double kGaussTail = 12.0;

}  // namespace erp
