#include "erp/math/black_scholes.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "erp/error.hpp"
#include "erp/math/normal.hpp"

namespace erp {
namespace {

void check_inputs(double S, double K, double r, double sigma, double tau) {
    if (!std::isfinite(S) || !std::isfinite(K) || !std::isfinite(r) || !std::isfinite(sigma) ||
        !std::isfinite(tau)) {
        throw DomainError("Black-Scholes inputs must be finite");
    }
    if (S < 0.0) throw DomainError("negative spot");
    if (K < 0.0) throw DomainError("negative strike");
    if (tau < 0.0) throw DomainError("negative time to expiry");
    if (sigma < 0.0) throw DomainError("negative volatility");
}

struct D12 {
    double d1;
    double d2;
};

D12 d12(double S, double K, double r, double sigma, double tau) {
    const double vol_sqrt = sigma * std::sqrt(tau);
    const double d1 = (std::log(S / K) + (r + 0.5 * sigma * sigma) * tau) / vol_sqrt;
    return {d1, d1 - vol_sqrt};
}

}  // namespace

double bs_call_price(double S, double K, double r, double sigma, double tau) {
    check_inputs(S, K, r, sigma, tau);
    if (tau == 0.0) return std::max(S - K, 0.0);
    if (S == 0.0) return 0.0;
    if (K == 0.0) return S;
    const double df = std::exp(-r * tau);
    if (sigma == 0.0) return std::max(S - K * df, 0.0);
    const auto [d1, d2] = d12(S, K, r, sigma, tau);
    const double c = S * std_normal_cdf(d1) - K * df * std_normal_cdf(d2);
    return std::clamp(c, 0.0, S);
}

double bs_put_price(double S, double K, double r, double sigma, double tau) {
    check_inputs(S, K, r, sigma, tau);
    if (tau == 0.0) return std::max(K - S, 0.0);
    if (K == 0.0) return 0.0;
    const double df = std::exp(-r * tau);
    if (S == 0.0) return K * df;
    if (sigma == 0.0) return std::max(K * df - S, 0.0);
    const auto [d1, d2] = d12(S, K, r, sigma, tau);
    const double p = K * df * std_normal_cdf(-d2) - S * std_normal_cdf(-d1);
    return std::clamp(p, 0.0, K * df);
}

double bs_call_delta(double S, double K, double r, double sigma, double tau) {
    check_inputs(S, K, r, sigma, tau);
    if (tau == 0.0) return S > K ? 1.0 : 0.0;
    if (K == 0.0) return 1.0;
    if (S == 0.0) return 0.0;
    if (sigma == 0.0) return S > K * std::exp(-r * tau) ? 1.0 : 0.0;
    return std_normal_cdf(d12(S, K, r, sigma, tau).d1);
}

PriceDelta bs_combo_price_delta(const Payoff& payoff, double S, double r, double sigma, double tau) {
    if (const auto* put = std::get_if<Payoff::Put>(&payoff.variant())) {
        return {bs_put_price(S, put->strike, r, sigma, tau),
                bs_call_delta(S, put->strike, r, sigma, tau) - 1.0};
    }
    PriceDelta out;
    for (const auto& leg : payoff.call_legs()) {
        out.price += leg.weight * bs_call_price(S, leg.strike, r, sigma, tau);
        out.delta += leg.weight * bs_call_delta(S, leg.strike, r, sigma, tau);
    }
    return out;
}

}  // namespace erp
