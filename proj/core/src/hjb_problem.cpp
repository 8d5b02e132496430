#include "erp/hjb/problem.hpp"

#include <cmath>

#include "erp/error.hpp"

namespace erp::hjb {

BoundaryPreset preset_for(const Payoff& payoff) {
    if (payoff.is_call()) return BoundaryPreset::CallPreset;
    if (payoff.is_bounded() && payoff.eval(0.0) == 0.0) return BoundaryPreset::BoundedPayoffPreset;
    throw UnsupportedPayoff("no boundary preset for " + payoff.describe());
}

void HjbProblem::validate() const {
    mp.validate();
    const bool ok = preset == BoundaryPreset::CallPreset
                        ? payoff.is_call()
                        : payoff.is_bounded() && payoff.eval(0.0) == 0.0;
    if (!ok) {
        throw UnsupportedPayoff("boundary preset does not match payoff " + payoff.describe());
    }
}

BoundarySlices boundary_values(const HjbProblem& problem, const GridSpec& grid, double tau) {
    problem.validate();
    const RiskFunction R = problem.risk;
    const double lb = R.lower_bound();
    const double growth = std::exp(problem.mp.r * tau);
    const bool seller = problem.side == Side::Seller;

    BoundarySlices b;
    b.S_lo.resize(grid.N2);
    b.S_hi.resize(grid.N2);
    b.v_lo.resize(grid.N1);
    b.v_hi.resize(grid.N1);

    const double z_max = problem.payoff.eval(grid.S_max);
    for (std::size_t j = 0; j < grid.N2; ++j) {
        const double carry = grid.v(j) * growth;
        b.S_lo[j] = seller ? R.eval(-carry) : R.eval(carry);
        if (problem.preset == BoundaryPreset::CallPreset) {
            b.S_hi[j] = seller ? R.eval(z_max - carry) : R.eval(carry - z_max);
        } else {
            b.S_hi[j] = b.S_lo[j];
        }
    }
    const double vmax_carry = grid.v_max * growth;
    for (std::size_t i = 0; i < grid.N1; ++i) {
        const double z = problem.payoff.eval(grid.S(i));
        if (seller) {
            b.v_lo[i] = R.eval(z + vmax_carry);
            // For a call the seller's risk at +v_max is far from its floor once
            // S is large; the unhedged position matches the S_max edge.
            b.v_hi[i] = problem.preset == BoundaryPreset::CallPreset ? R.eval(z - vmax_carry) : lb;
        } else {
            b.v_lo[i] = lb;
            b.v_hi[i] = R.eval(vmax_carry - z);
        }
    }
    return b;
}

}  // namespace erp::hjb
