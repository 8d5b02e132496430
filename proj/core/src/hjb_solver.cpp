#include "erp/hjb/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "erp/error.hpp"
#include "erp/hjb/tridiagonal.hpp"
#include "erp/parallel.hpp"

namespace erp::hjb {
namespace {

// Coefficients of a F_SS + rho F_Sv + b F_vv + c F_S + d F_v at one node.
// The buyer's account holds -phi shares, which flips the sign of the cross
// term and of the excess-return drift.
struct NodeCoefficients {
    double a;
    double b;
    double rho;
    double c;
    double d;
};

NodeCoefficients coefficients(const HjbProblem& p, double S, double v, double phi) {
    const double s2 = p.mp.sigma * p.mp.sigma * S * S;
    const double sign = p.side == Side::Seller ? 1.0 : -1.0;
    return {0.5 * s2, 0.5 * phi * phi * s2, sign * phi * s2, p.mp.mu * S,
            p.mp.r * v + sign * (p.mp.mu - p.mp.r) * phi * S};
}

double cross_difference(const ValueSurface& F, std::size_t i, std::size_t j) {
    return F.at(i + 1, j + 1) - F.at(i - 1, j + 1) - F.at(i + 1, j - 1) + F.at(i - 1, j - 1);
}

void check_finite(const ValueSurface& F, const char* stage) {
    for (std::size_t i = 0; i < F.grid.N1; ++i) {
        for (std::size_t j = 0; j < F.grid.N2; ++j) {
            if (!std::isfinite(F.at(i, j))) {
                std::ostringstream os;
                os << "non-finite value " << F.at(i, j) << " at node (i=" << i << ", j=" << j << ") after " << stage
                   << " at tau=" << F.tau;
                throw NonFinite(os.str());
            }
        }
    }
}

void count_warnings(SolveDiagnostics* diag, const std::vector<char>& flags) {
    if (!diag) return;
    for (char f : flags) diag->dominance_warnings += f ? 0 : 1;
}

}  // namespace

ValueSurface terminal_condition(const HjbProblem& problem, const GridSpec& grid) {
    problem.validate();
    grid.validate();
    ValueSurface out(grid, 0.0);
    for (std::size_t i = 0; i < grid.N1; ++i) {
        const double z = problem.payoff.eval(grid.S(i));
        for (std::size_t j = 0; j < grid.N2; ++j) {
            const double x = problem.side == Side::Seller ? z - grid.v(j) : grid.v(j) - z;
            out.at(i, j) = problem.risk.eval(x);
        }
    }
    return out;
}

Field control_update(const ValueSurface& F, const HjbProblem& problem, const SolverOptions& opt) {
    const GridSpec& g = F.grid;
    const double dS = g.dS();
    const double dv = g.dv();
    double f_max = 0.0;
    for (double f : F.F) f_max = std::max(f_max, std::abs(f));
    const double eps = opt.degenerate_rel * f_max;
    const double sign = problem.side == Side::Seller ? -1.0 : 1.0;
    const double excess = problem.mp.mu - problem.mp.r;
    const double var = problem.mp.sigma * problem.mp.sigma;

    Field phi(g.size(), 0.0);
    for (std::size_t i = 1; i + 1 < g.N1; ++i) {
        const double S = g.S(i);
        for (std::size_t j = 1; j + 1 < g.N2; ++j) {
            const double curv = F.at(i, j + 1) - 2.0 * F.at(i, j) + F.at(i, j - 1);
            if (!(curv > eps)) continue;
            double num = dv / (4.0 * dS) * cross_difference(F, i, j);
            if (excess != 0.0) {
                num += excess / (var * S) * 0.5 * dv * (F.at(i, j + 1) - F.at(i, j - 1));
            }
            phi[g.index(i, j)] = std::clamp(sign * num / curv, 0.0, opt.phi_cap);
        }
    }
    // Edges copy the nearest interior node.
    for (std::size_t i = 0; i < g.N1; ++i) {
        const std::size_t ii = std::clamp<std::size_t>(i, 1, g.N1 - 2);
        for (std::size_t j = 0; j < g.N2; ++j) {
            const std::size_t jj = std::clamp<std::size_t>(j, 1, g.N2 - 2);
            if (ii != i || jj != j) phi[g.index(i, j)] = phi[g.index(ii, jj)];
        }
    }
    return phi;
}

void impose_boundary(ValueSurface& F, const HjbProblem& problem) {
    const GridSpec& g = F.grid;
    const auto b = boundary_values(problem, g, F.tau);
    for (std::size_t i = 0; i < g.N1; ++i) {
        F.at(i, 0) = b.v_lo[i];
        F.at(i, g.N2 - 1) = b.v_hi[i];
    }
    for (std::size_t j = 0; j < g.N2; ++j) {
        F.at(0, j) = b.S_lo[j];
        F.at(g.N1 - 1, j) = b.S_hi[j];
    }
}

ValueSurface sweep_S(const ValueSurface& F, const Field& phi, const HjbProblem& problem, double dt,
                     const SolverOptions& opt, SolveDiagnostics* diag) {
    const GridSpec& g = F.grid;
    ValueSurface out(g, F.tau + dt);
    out.phi = phi;
    impose_boundary(out, problem);

    const double dS = g.dS();
    const double dv = g.dv();
    const std::size_t n = g.N1 - 2;
    std::vector<char> dominant(g.N2, 1);

    parallel_for(g.N2 - 2, opt.threads, [&](std::size_t r0, std::size_t r1) {
        std::vector<double> lo(n), di(n), up(n), rhs(n), scratch(n);
        for (std::size_t r = r0; r < r1; ++r) {
            const std::size_t j = r + 1;
            const double v = g.v(j);
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t i = k + 1;
                const auto co = coefficients(problem, g.S(i), v, phi[g.index(i, j)]);
                const double diff = co.a / (dS * dS);
                const double conv = co.c / (2.0 * dS);
                lo[k] = -dt * (diff - conv);
                di[k] = 1.0 + 2.0 * dt * diff;
                up[k] = -dt * (diff + conv);
                const double explicit_part =
                    co.b * (F.at(i, j + 1) - 2.0 * F.at(i, j) + F.at(i, j - 1)) / (dv * dv) +
                    co.d * (F.at(i, j + 1) - F.at(i, j - 1)) / (2.0 * dv) +
                    co.rho * cross_difference(F, i, j) / (4.0 * dS * dv);
                rhs[k] = F.at(i, j) + dt * explicit_part;
            }
            rhs[0] -= lo[0] * out.at(0, j);
            rhs[n - 1] -= up[n - 1] * out.at(g.N1 - 1, j);
            dominant[j] = solve_tridiagonal(lo, di, up, rhs, scratch) ? 1 : 0;
            for (std::size_t k = 0; k < n; ++k) out.at(k + 1, j) = rhs[k];
        }
    });
    count_warnings(diag, dominant);
    if (diag) ++diag->sweeps;
    check_finite(out, "S sweep");
    return out;
}

ValueSurface sweep_v(const ValueSurface& F, const Field& phi, const HjbProblem& problem, double dt,
                     const SolverOptions& opt, SolveDiagnostics* diag) {
    const GridSpec& g = F.grid;
    ValueSurface out(g, F.tau + dt);
    out.phi = phi;
    impose_boundary(out, problem);

    const double dS = g.dS();
    const double dv = g.dv();
    const std::size_t n = g.N2 - 2;
    std::vector<char> dominant(g.N1, 1);

    parallel_for(g.N1 - 2, opt.threads, [&](std::size_t c0, std::size_t c1) {
        std::vector<double> lo(n), di(n), up(n), rhs(n), scratch(n);
        for (std::size_t col = c0; col < c1; ++col) {
            const std::size_t i = col + 1;
            const double S = g.S(i);
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t j = k + 1;
                const auto co = coefficients(problem, S, g.v(j), phi[g.index(i, j)]);
                const double diff = co.b / (dv * dv);
                const double conv = co.d / (2.0 * dv);
                lo[k] = -dt * (diff - conv);
                di[k] = 1.0 + 2.0 * dt * diff;
                up[k] = -dt * (diff + conv);
                const double explicit_part =
                    co.a * (F.at(i + 1, j) - 2.0 * F.at(i, j) + F.at(i - 1, j)) / (dS * dS) +
                    co.c * (F.at(i + 1, j) - F.at(i - 1, j)) / (2.0 * dS) +
                    co.rho * cross_difference(F, i, j) / (4.0 * dS * dv);
                rhs[k] = F.at(i, j) + dt * explicit_part;
            }
            rhs[0] -= lo[0] * out.at(i, 0);
            rhs[n - 1] -= up[n - 1] * out.at(i, g.N2 - 1);
            dominant[i] = solve_tridiagonal(lo, di, up, rhs, scratch) ? 1 : 0;
            for (std::size_t k = 0; k < n; ++k) out.at(i, k + 1) = rhs[k];
        }
    });
    count_warnings(diag, dominant);
    if (diag) ++diag->sweeps;
    check_finite(out, "v sweep");
    return out;
}

ValueSurface adi_step(const ValueSurface& F, const Field& phi, const HjbProblem& problem, double dt,
                      const SolverOptions& opt, SolveDiagnostics* diag) {
    return sweep_v(sweep_S(F, phi, problem, dt, opt, diag), phi, problem, dt, opt, diag);
}

SolveResult solve(const HjbProblem& problem, const GridSpec& grid, const SolverOptions& opt) {
    problem.validate();
    grid.validate();
    if (!(opt.phi_cap >= 0.0)) throw ConfigError("phi cap must be nonnegative");
    if (opt.threads < 1) throw ConfigError("threads must be at least 1");

    const double T = problem.mp.T;
    const double dtau = grid.dtau(T);
    const bool half = opt.adi == AdiMode::HalfStep;
    const std::size_t total_sweeps = half ? 2 * (grid.M - 1) : grid.M - 1;
    const double dt = half ? 0.5 * dtau : dtau;

    SolveResult result;
    ValueSurface F = terminal_condition(problem, grid);
    std::size_t done = 0;
    while (done < total_sweeps) {
        const Field phi = control_update(F, problem, opt);
        ++result.diagnostics.control_updates;
        if (opt.keep_control_history) result.controls.push_back(phi);
        F = sweep_S(F, phi, problem, dt, opt, &result.diagnostics);
        ++done;
        if (done < total_sweeps) {
            F = sweep_v(F, phi, problem, dt, opt, &result.diagnostics);
            ++done;
        }
    }
    F.tau = T;
    F.phi = control_update(F, problem, opt);
    result.surface = std::move(F);
    return result;
}

}  // namespace erp::hjb
