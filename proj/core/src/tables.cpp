#include "erp/extract/tables.hpp"

#include <cmath>
#include <cstdio>

#include "erp/analytic/vanilla.hpp"
#include "erp/error.hpp"
#include "erp/math/black_scholes.hpp"

namespace erp::extract {
namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

SpotValues spot_values(const hjb::ValueSurface& surface, double v0) {
    SpotValues out{};
    for (std::size_t k = 0; k < kReportSpots.size(); ++k) out[k] = surface.value_at(kReportSpots[k], v0);
    return out;
}

double l2_error(const SpotValues& values, const SpotValues& reference) {
    double sum = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double d = values[k] - reference[k];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(values.size()));
}

Benchmark analytic_benchmark(const hjb::HjbProblem& problem, double v0) {
    const auto* call = std::get_if<Payoff::Call>(&problem.payoff.variant());
    if (!call) throw UnsupportedPayoff("closed-form benchmark needs a call, got " + problem.payoff.describe());
    if (problem.mp.mu != problem.mp.r) throw UnsupportedPayoff("closed-form benchmark needs mu == r");
    Benchmark b{"analytic", {}};
    for (std::size_t k = 0; k < kReportSpots.size(); ++k) {
        const double S = kReportSpots[k];
        b.values[k] = problem.side == Side::Seller
                          ? analytic::seller_exposure_call(problem.mp, problem.risk, call->strike, S, v0).value
                          : analytic::buyer_exposure_call(problem.mp, problem.risk, call->strike, S, v0).value;
    }
    return b;
}

Benchmark grid_benchmark(const hjb::HjbProblem& problem, const hjb::GridSpec& grid, double v0,
                         const hjb::SolverOptions& opt) {
    const auto result = hjb::solve(problem, grid, opt);
    return {grid.label(), spot_values(result.surface, v0)};
}

ConvergenceTable convergence_table(const hjb::HjbProblem& problem, const std::vector<hjb::GridSpec>& grids,
                                   const Benchmark& benchmark, double v0, const hjb::SolverOptions& opt) {
    ConvergenceTable table{benchmark, {}};
    for (const auto& g : grids) {
        const auto result = hjb::solve(problem, g, opt);
        ConvergenceRow row{g, spot_values(result.surface, v0), 0.0, std::nullopt};
        row.l2 = l2_error(row.values, benchmark.values);
        if (!table.rows.empty() && row.l2 > 0.0) row.ratio = table.rows.back().l2 / row.l2;
        table.rows.push_back(row);
    }
    return table;
}

std::vector<CompareRow> compare_vs_frictionless(const ErpCurve& curve, const Payoff& payoff, const MarketParams& mp) {
    std::vector<CompareRow> rows;
    rows.reserve(curve.points.size());
    for (const auto& p : curve.points) {
        CompareRow row;
        row.S = p.S;
        row.erp = p.v;
        row.bs = bs_combo_price_delta(payoff, p.S, mp.r, mp.sigma, mp.T).price;
        row.abs_diff = row.erp - row.bs;
        if (row.bs > 1e-12) row.rel_diff_pct = 100.0 * row.abs_diff / row.bs;
        rows.push_back(row);
    }
    return rows;
}

void write_curve_csv(std::ostream& os, const ErpCurve& curve) {
    os << "S,v_erp\n";
    for (const auto& p : curve.points) os << fmt(p.S) << ',' << fmt(p.v) << '\n';
}

void write_convergence_csv(std::ostream& os, const ConvergenceTable& table) {
    os << "grid,S4,S45,S5,S55,S6,l2,ratio\n";
    os << table.benchmark.label;
    for (double x : table.benchmark.values) os << ',' << fmt(x);
    os << ",,\n";
    for (const auto& r : table.rows) {
        os << r.grid.label();
        for (double x : r.values) os << ',' << fmt(x);
        os << ',' << fmt(r.l2) << ',' << (r.ratio ? fmt(*r.ratio) : std::string()) << '\n';
    }
}

void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows) {
    os << "S,erp,bs,abs_diff,rel_diff_pct\n";
    for (const auto& r : rows) {
        os << fmt(r.S) << ',' << fmt(r.erp) << ',' << fmt(r.bs) << ',' << fmt(r.abs_diff) << ','
           << (r.rel_diff_pct ? fmt(*r.rel_diff_pct) : std::string()) << '\n';
    }
}

}  // namespace erp::extract
