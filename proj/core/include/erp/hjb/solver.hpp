#pragma once

#include <cstddef>
#include <vector>

#include "erp/hjb/grid.hpp"
#include "erp/hjb/problem.hpp"

namespace erp::hjb {

/// How the two directional sweeps map onto time levels.
///   AsWritten - every sweep advances one full level dtau; M-1 sweeps in total,
///               alternating S-implicit and v-implicit, the control refreshed
///               before each pair.
///   HalfStep  - M-1 full steps, each an S sweep and a v sweep of dtau/2.
enum class AdiMode { AsWritten, HalfStep };

struct SolverOptions {
    AdiMode adi = AdiMode::AsWritten;
    double phi_cap = 4.0;
    /// Second differences in v at or below this fraction of max|F| leave
    /// the control at zero.
    double degenerate_rel = 1e-12;
    int threads = 1;
    bool keep_control_history = false;
};

struct SolveDiagnostics {
    std::size_t sweeps = 0;
    std::size_t control_updates = 0;
    std::size_t dominance_warnings = 0;  ///< tridiagonal rows without diagonal dominance
};

struct SolveResult {
    ValueSurface surface;            ///< tau = T, i.e. valuation time; phi is the control there
    std::vector<Field> controls;     ///< control at each refresh, if requested
    SolveDiagnostics diagnostics;
};

/// F(0, S_i, v_j) = R(Z(S_i) - v_j) for the seller, R(v_j - Z(S_i)) for the
/// buyer; phi = 0.
[[nodiscard]] ValueSurface terminal_condition(const HjbProblem& problem, const GridSpec& grid);

/// Pointwise minimiser of the phi-dependent part of the generator, from
/// central differences of F, clamped to [0, phi_cap]. With mu == r this is
///   phi = max(-(dv / 4 dS) * cross / (F_{j+1} - 2 F_j + F_{j-1}), 0)
/// for the seller (the buyer's cross term has the opposite sign). Edge
/// nodes copy the nearest interior node.
[[nodiscard]] Field control_update(const ValueSurface& F, const HjbProblem& problem, const SolverOptions& opt = {});

/// Sweep implicit in S, explicit in v and the cross term, advancing by dt to
/// F.tau + dt. Boundary data at the new level is imposed on the result.
[[nodiscard]] ValueSurface sweep_S(const ValueSurface& F, const Field& phi, const HjbProblem& problem, double dt,
                                   const SolverOptions& opt = {}, SolveDiagnostics* diag = nullptr);

/// Sweep implicit in v, explicit in S and the cross term.
[[nodiscard]] ValueSurface sweep_v(const ValueSurface& F, const Field& phi, const HjbProblem& problem, double dt,
                                   const SolverOptions& opt = {}, SolveDiagnostics* diag = nullptr);

/// sweep_S followed by sweep_v with the same frozen control; each sweep
/// uses the given sub-step dt.
[[nodiscard]] ValueSurface adi_step(const ValueSurface& F, const Field& phi, const HjbProblem& problem, double dt,
                                    const SolverOptions& opt = {}, SolveDiagnostics* diag = nullptr);

/// Imposes the Dirichlet data at level F.tau (v edges first, then S edges).
void impose_boundary(ValueSurface& F, const HjbProblem& problem);

/// Marches from the terminal condition to tau = T. Throws NonFinite with the
/// offending node if the surface blows up.
[[nodiscard]] SolveResult solve(const HjbProblem& problem, const GridSpec& grid, const SolverOptions& opt = {});

}  // namespace erp::hjb
