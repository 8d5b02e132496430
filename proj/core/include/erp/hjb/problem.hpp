#pragma once

#include <vector>

#include "erp/hjb/grid.hpp"
#include "erp/market.hpp"
#include "erp/payoff.hpp"
#include "erp/risk.hpp"

namespace erp::hjb {

/// Dirichlet data families on the truncated domain.
///   CallPreset          - European call. The S_max edge (both sides) and the
///                         seller's +v_max edge carry the unhedged risk, e.g.
///                         R((S-K)^+ - v e^{r tau}) for the seller.
///   BoundedPayoffPreset - bounded claims that are worthless at S = 0 and S -> infinity.
enum class BoundaryPreset { CallPreset, BoundedPayoffPreset };

/// One side's control problem. mp.mu is used as given (physical measure);
/// pass mp.martingale() for the martingale measure.
struct HjbProblem {
    Side side;
    Payoff payoff;
    MarketParams mp;
    RiskFunction risk;
    BoundaryPreset preset;

    /// Checks market data and that the preset matches the payoff family.
    /// Throws UnsupportedPayoff on mismatch.
    void validate() const;
};

/// Picks the preset for a payoff: Call -> CallPreset, bounded claims that
/// vanish at S = 0 -> BoundedPayoffPreset; anything else throws.
[[nodiscard]] BoundaryPreset preset_for(const Payoff& payoff);

/// Dirichlet values at time-to-expiry tau along the four edges.
struct BoundarySlices {
    std::vector<double> S_lo;  ///< F(tau, 0, v_j), size N2
    std::vector<double> S_hi;  ///< F(tau, S_max, v_j), size N2
    std::vector<double> v_lo;  ///< F(tau, S_i, -v_max), size N1
    std::vector<double> v_hi;  ///< F(tau, S_i, +v_max), size N1
};

[[nodiscard]] BoundarySlices boundary_values(const HjbProblem& problem, const GridSpec& grid, double tau);

}  // namespace erp::hjb
