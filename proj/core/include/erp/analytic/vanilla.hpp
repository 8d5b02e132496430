#pragma once

#include <cstddef>

#include "erp/market.hpp"
#include "erp/math/quadrature.hpp"
#include "erp/risk.hpp"

namespace erp::analytic {

/// Minimum expected risk of one side at contract price v, in risk-function units.
struct ExposureQuote {
    Side side = Side::Seller;
    double S = 0.0;
    double v = 0.0;
    double value = 0.0;
};

/// Options shared by the closed-form routines.
struct AnalyticOptions {
    std::size_t quadrature_nodes = kDefaultQuadratureNodes;
    double root_tol = 1e-10;
};

// All routines price under the martingale measure: mp.mu is ignored.

/// Call seller: R(e^{rT}(C^BS - v)); the seller replicates with the call delta.
[[nodiscard]] ExposureQuote seller_exposure_call(const MarketParams& mp, RiskFunction R, double K, double S,
                                                 double v, const AnalyticOptions& opt = {});

/// Call buyer: E_Q[R(v e^{rT} - (S_T - K)^+)]; the buyer holds no stock.
[[nodiscard]] ExposureQuote buyer_exposure_call(const MarketParams& mp, RiskFunction R, double K, double S,
                                                double v, const AnalyticOptions& opt = {});

/// Put buyer: R(e^{rT}(v - P^BS)).
[[nodiscard]] ExposureQuote buyer_exposure_put(const MarketParams& mp, RiskFunction R, double K, double S,
                                               double v, const AnalyticOptions& opt = {});

/// Put seller: E_Q[R((K - S_T)^+ - v e^{rT})]; the seller holds no stock.
[[nodiscard]] ExposureQuote seller_exposure_put(const MarketParams& mp, RiskFunction R, double K, double S,
                                                double v, const AnalyticOptions& opt = {});

/// Equal-risk price of a European call. ExpMinusOne uses the explicit
/// log-moment formula; PositivePart solves
///   v = C^BS(K) - [P^BS(K + v e^{rT}) - P^BS(K)]
/// by bisection on [0, C^BS].
[[nodiscard]] double erp_call(const MarketParams& mp, RiskFunction R, double K, double S,
                              const AnalyticOptions& opt = {});

/// Equal-risk price of a European put. ExpMinusOne is explicit; PositivePart
/// solves v = P^BS(K) + P^BS(K - v e^{rT}) by bisection on [P^BS, P^BS + K].
[[nodiscard]] double erp_put(const MarketParams& mp, RiskFunction R, double K, double S,
                             const AnalyticOptions& opt = {});

/// Standard-normal preimage of the strike: S_T = K at
/// x* = [ln(K/S) - (r - sigma^2/2) T] / (sigma sqrt T).
[[nodiscard]] double kink_preimage(const MarketParams& mp, double K, double S);

/// Terminal spot as a function of the standard normal variate x.
[[nodiscard]] double terminal_spot(const MarketParams& mp, double S, double x);

}  // namespace erp::analytic
