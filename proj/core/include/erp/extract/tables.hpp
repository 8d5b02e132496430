#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "erp/extract/extract.hpp"
#include "erp/hjb/solver.hpp"

namespace erp::extract {

/// Spots at which the convergence tables are reported.
inline constexpr std::array<double, 5> kReportSpots{4.0, 4.5, 5.0, 5.5, 6.0};

using SpotValues = std::array<double, kReportSpots.size()>;

/// Reference values for a convergence study.
struct Benchmark {
    std::string label;  ///< "analytic" or the benchmark grid label
    SpotValues values{};
};

/// F(T, S, v0) at the report spots by bilinear interpolation.
[[nodiscard]] SpotValues spot_values(const hjb::ValueSurface& surface, double v0);

/// Root-mean-square of the differences over the report spots.
[[nodiscard]] double l2_error(const SpotValues& values, const SpotValues& reference);

/// Closed-form exposures at the report spots. Requires a call payoff with
/// mu == r; throws UnsupportedPayoff otherwise.
[[nodiscard]] Benchmark analytic_benchmark(const hjb::HjbProblem& problem, double v0);

/// Benchmark taken from a (fine) grid solve.
[[nodiscard]] Benchmark grid_benchmark(const hjb::HjbProblem& problem, const hjb::GridSpec& grid, double v0,
                                       const hjb::SolverOptions& opt = {});

struct ConvergenceRow {
    hjb::GridSpec grid;
    SpotValues values{};
    double l2 = 0.0;
    std::optional<double> ratio;  ///< l2 of the previous row over this one
};

struct ConvergenceTable {
    Benchmark benchmark;
    std::vector<ConvergenceRow> rows;
};

/// Solves on each grid (coarse to fine) and tabulates errors against the
/// benchmark.
[[nodiscard]] ConvergenceTable convergence_table(const hjb::HjbProblem& problem, const std::vector<hjb::GridSpec>& grids,
                                                 const Benchmark& benchmark, double v0,
                                                 const hjb::SolverOptions& opt = {});

struct CompareRow {
    double S = 0.0;
    double erp = 0.0;
    double bs = 0.0;
    double abs_diff = 0.0;
    std::optional<double> rel_diff_pct;  ///< absent when bs <= 1e-12
};

/// ERP against the frictionless price of the same claim at time to expiry T.
[[nodiscard]] std::vector<CompareRow> compare_vs_frictionless(const ErpCurve& curve, const Payoff& payoff,
                                                              const MarketParams& mp);

// CSV writers, 6 significant digits, header first.
void write_curve_csv(std::ostream& os, const ErpCurve& curve);
void write_convergence_csv(std::ostream& os, const ConvergenceTable& table);
void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows);

}  // namespace erp::extract
