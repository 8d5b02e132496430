#include "erp/analytic/vanilla.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <vector>

#include "erp/error.hpp"
#include "erp/math/black_scholes.hpp"
#include "erp/math/root.hpp"

namespace erp::analytic {
namespace {

void check(const MarketParams& mp, double K, double S, double v) {
    mp.validate();
    if (!std::isfinite(K) || K < 0.0) throw DomainError("strike must be finite and nonnegative");
    if (!std::isfinite(S) || S < 0.0) throw DomainError("spot must be finite and nonnegative");
    if (!std::isfinite(v)) throw DomainError("contract price must be finite");
}

double call_bs(const MarketParams& mp, double K, double S) { return bs_call_price(S, K, mp.r, mp.sigma, mp.T); }
double put_bs(const MarketParams& mp, double K, double S) { return bs_put_price(S, K, mp.r, mp.sigma, mp.T); }

// A put struck at or below zero is worthless.
double put_bs_or_zero(const MarketParams& mp, double K, double S) { return K <= 0.0 ? 0.0 : put_bs(mp, K, S); }

// E_Q[g(S_T)] with the line split at the preimages of the given terminal
// levels. Levels at or below zero have no preimage and are skipped.
template <class G>
double expect_terminal(const MarketParams& mp, std::initializer_list<double> levels, double S, std::size_t nodes,
                       G&& g) {
    std::vector<double> cuts;
    for (double level : levels) {
        if (level > 0.0) cuts.push_back(kink_preimage(mp, level, S));
    }
    std::sort(cuts.begin(), cuts.end());
    return gauss_weighted_integral([&](double x) { return g(terminal_spot(mp, S, x)); }, nodes, cuts);
}

// Terminal level where the positive-part risk has its own kink, or zero
// (skipped) for the smooth exponential risk.
double risk_kink(RiskFunction R, double level) {
    return R.kind() == RiskFunction::Kind::PositivePart ? level : 0.0;
}

}  // namespace

double kink_preimage(const MarketParams& mp, double K, double S) {
    if (S <= 0.0 || K <= 0.0) {
        return K <= 0.0 ? -INFINITY : INFINITY;
    }
    return (std::log(K / S) - (mp.r - 0.5 * mp.sigma * mp.sigma) * mp.T) / (mp.sigma * std::sqrt(mp.T));
}

double terminal_spot(const MarketParams& mp, double S, double x) {
    return S * std::exp((mp.r - 0.5 * mp.sigma * mp.sigma) * mp.T + mp.sigma * std::sqrt(mp.T) * x);
}

ExposureQuote seller_exposure_call(const MarketParams& mp, RiskFunction R, double K, double S, double v,
                                   const AnalyticOptions&) {
    check(mp, K, S, v);
    const double growth = std::exp(mp.r * mp.T);
    return {Side::Seller, S, v, R.eval(growth * (call_bs(mp, K, S) - v))};
}

ExposureQuote buyer_exposure_call(const MarketParams& mp, RiskFunction R, double K, double S, double v,
                                  const AnalyticOptions& opt) {
    check(mp, K, S, v);
    const double carry = v * std::exp(mp.r * mp.T);
    if (S == 0.0) {
        return {Side::Buyer, S, v, R.eval(carry)};
    }
    const double value = expect_terminal(mp, {K, risk_kink(R, K + carry)}, S, opt.quadrature_nodes,
                                         [&](double ST) { return R.eval(carry - std::max(ST - K, 0.0)); });
    return {Side::Buyer, S, v, value};
}

ExposureQuote buyer_exposure_put(const MarketParams& mp, RiskFunction R, double K, double S, double v,
                                 const AnalyticOptions&) {
    check(mp, K, S, v);
    const double growth = std::exp(mp.r * mp.T);
    return {Side::Buyer, S, v, R.eval(growth * (v - put_bs(mp, K, S)))};
}

ExposureQuote seller_exposure_put(const MarketParams& mp, RiskFunction R, double K, double S, double v,
                                  const AnalyticOptions& opt) {
    check(mp, K, S, v);
    const double carry = v * std::exp(mp.r * mp.T);
    if (S == 0.0) {
        return {Side::Seller, S, v, R.eval(K - carry)};
    }
    const double value = expect_terminal(mp, {K, risk_kink(R, K - carry)}, S, opt.quadrature_nodes,
                                         [&](double ST) { return R.eval(std::max(K - ST, 0.0) - carry); });
    return {Side::Seller, S, v, value};
}

double erp_call(const MarketParams& mp, RiskFunction R, double K, double S, const AnalyticOptions& opt) {
    check(mp, K, S, 0.0);
    const double c = call_bs(mp, K, S);
    if (S == 0.0) return 0.0;
    const double growth = std::exp(mp.r * mp.T);
    if (R.kind() == RiskFunction::Kind::ExpMinusOne) {
        const double m = expect_terminal(mp, {K}, S, opt.quadrature_nodes,
                                         [&](double ST) { return std::exp(-std::max(ST - K, 0.0)); });
        return 0.5 * (c - std::log(m) / growth);
    }
    const double p = put_bs(mp, K, S);
    const auto g = [&](double v) { return v - c + put_bs(mp, K + v * growth, S) - p; };
    return bracketed_root(g, 0.0, c, opt.root_tol);
}

double erp_put(const MarketParams& mp, RiskFunction R, double K, double S, const AnalyticOptions& opt) {
    check(mp, K, S, 0.0);
    const double p = put_bs(mp, K, S);
    const double growth = std::exp(mp.r * mp.T);
    if (R.kind() == RiskFunction::Kind::ExpMinusOne) {
        if (S == 0.0) return p;
        const double m = expect_terminal(mp, {K}, S, opt.quadrature_nodes,
                                         [&](double ST) { return std::exp(std::max(K - ST, 0.0)); });
        return 0.5 * (p + std::log(m) / growth);
    }
    if (K == 0.0) return 0.0;
    const auto g = [&](double v) { return v - p - put_bs_or_zero(mp, K - v * growth, S); };
    return bracketed_root(g, p, p + K, opt.root_tol);
}

}  // namespace erp::analytic
