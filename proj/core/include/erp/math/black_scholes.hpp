#pragma once

#include "erp/payoff.hpp"

namespace erp {

struct PriceDelta {
    double price = 0.0;
    double delta = 0.0;
};

/// Black-Scholes European call. Requires S, K, tau >= 0 and sigma >= 0;
/// tau == 0 gives the intrinsic value and sigma == 0 the discounted forward
/// intrinsic value. Throws DomainError otherwise.
[[nodiscard]] double bs_call_price(double S, double K, double r, double sigma, double tau);

/// Black-Scholes European put, same domain as bs_call_price.
[[nodiscard]] double bs_put_price(double S, double K, double r, double sigma, double tau);

/// dC/dS of the Black-Scholes call. At tau == 0 uses the right-continuous
/// step 1{S > K}.
[[nodiscard]] double bs_call_delta(double S, double K, double r, double sigma, double tau);

/// Frictionless price and delta of any supported payoff, as the weighted
/// sum of Black-Scholes call terms (Put uses the put formula directly).
[[nodiscard]] PriceDelta bs_combo_price_delta(const Payoff& payoff, double S, double r, double sigma,
                                              double tau);

}  // namespace erp
