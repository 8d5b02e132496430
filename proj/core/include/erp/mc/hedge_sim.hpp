#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "erp/market.hpp"
#include "erp/payoff.hpp"
#include "erp/risk.hpp"

namespace erp::mc {

struct SimConfig {
    std::size_t n_paths = 200'000;
    std::size_t n_steps = 250;
    std::uint64_t seed = 20'220'501;
    bool antithetic = true;
    int threads = 1;

    /// n_paths >= 1, n_steps >= 1, and an even path count with antithetics.
    void validate() const;
};

/// Paths are generated in fixed-size batches, each with its own generator
/// seeded from (seed, batch index).
inline constexpr std::size_t kBatchPaths = 4096;

/// Frictionless replication delta pi(t, S) of a payoff with closed-form delta.
[[nodiscard]] double replication_delta(const Payoff& payoff, double S, double tau, const MarketParams& mp);

/// Projection of the replication delta onto the no-short set: the seller
/// holds pi^+, the buyer holds pi^- = max(-pi, 0).
struct HedgePolicy {
    Side side = Side::Seller;
    Payoff payoff;
    MarketParams mp;

    [[nodiscard]] double operator()(double tau, double S) const;
};

/// Stock holding as a function of (time to expiry, spot). Must return >= 0.
using HoldingRule = std::function<double(double tau, double S)>;

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Per-path realised risk R(Z - v_T) (seller) or R(v_T - Z) (buyer).
///
/// The stock follows exact log-space steps under the martingale measure
/// (mu replaced by r). The wealth recursion rebalances at each step's left
/// endpoint: cash accrues by e^{r dt}, the stock leg by the simulated move.
/// The buyer's account holds -phi shares starting from v, so a buyer of Z
/// at v and a seller of -Z at -v see bitwise-identical losses.
///
/// Throws DomainError if the rule returns a negative holding and Unstable if
/// ExpMinusOne would be evaluated above kExpArgumentLimit.
[[nodiscard]] std::vector<double> simulate_losses(const Payoff& payoff, Side side, double v, double S,
                                                  const MarketParams& mp, RiskFunction R, const SimConfig& cfg,
                                                  const HoldingRule& rule = {});

/// Sample mean and standard error of simulate_losses; antithetic pairs are
/// averaged before the standard error is taken.
[[nodiscard]] Estimate simulate_exposure(const Payoff& payoff, Side side, double v, double S,
                                         const MarketParams& mp, RiskFunction R, const SimConfig& cfg,
                                         const HoldingRule& rule = {});

struct ErpEstimate {
    double price = 0.0;
    double std_error = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

/// Equal-risk price under the martingale measure with projected hedges.
/// One set of paths is shared by every trial price, which makes the
/// seller-minus-buyer balance monotone in v; the root is found by bisection.
/// The reported error is the balance's standard error divided by its slope.
[[nodiscard]] ErpEstimate erp_q(const Payoff& payoff, const MarketParams& mp, RiskFunction R, double S,
                                const SimConfig& cfg, double root_tol = 1e-10);

}  // namespace erp::mc
