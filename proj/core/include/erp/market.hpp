#pragma once

#include <string_view>

namespace erp {

/// Coefficients of the bond/stock dynamics dP = rP dt, dS = mu S dt + sigma S dW.
struct MarketParams {
    double mu = 0.05;     ///< physical drift per year
    double r = 0.05;      ///< risk-free rate per year
    double sigma = 0.3;   ///< volatility per sqrt-year
    double T = 0.5;       ///< horizon in years

    /// Throws ConfigError unless sigma > 0 (or >= 0 when allowed), T > 0 and
    /// every field is finite.
    void validate(bool allow_zero_vol = false) const;

    /// Same market with the drift replaced by the risk-free rate.
    [[nodiscard]] MarketParams martingale() const noexcept {
        MarketParams q = *this;
        q.mu = r;
        return q;
    }
};

enum class Side { Seller, Buyer };

[[nodiscard]] constexpr std::string_view to_string(Side side) noexcept {
    return side == Side::Seller ? "seller" : "buyer";
}

}  // namespace erp
