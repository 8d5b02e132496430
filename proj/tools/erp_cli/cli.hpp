#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "erp/hjb/solver.hpp"
#include "erp/market.hpp"
#include "erp/mc/hedge_sim.hpp"
#include "erp/payoff.hpp"
#include "erp/risk.hpp"

namespace erp::cli {

enum class Exit : int { Ok = 0, Usage = 2, Numerical = 3, Io = 4 };

/// Everything a command needs, after config file, flags and payoff-dependent
/// defaults have been merged.
struct RunConfig {
    std::string command;
    std::string payoff_kind = "call";
    double K = 5.0;
    double K1 = 4.0;
    double K2 = 6.0;
    std::string weights;
    double S = 5.0;
    MarketParams market;
    std::string risk = "exp";
    std::string measure = "q";
    hjb::GridSpec grid;
    double v0 = 2.0;
    mc::SimConfig sim;
    std::size_t quadrature_nodes = 200;
    hjb::SolverOptions solver;
    std::string side = "both";
    std::vector<hjb::GridSpec> ladder;  ///< convergence grids, coarse to fine
    std::optional<hjb::GridSpec> bench_grid;
    std::string source;                 ///< compare: "analytic" or "hjb"
    std::string crossing = "node";      ///< extraction rule: "node" or "linear"
    std::filesystem::path out = "out";

    [[nodiscard]] Payoff payoff() const;
    [[nodiscard]] RiskFunction risk_function() const;
    /// Market used by the HJB solver: martingale for measure q, as given for p.
    [[nodiscard]] MarketParams solver_market() const;
};

/// Parses argv (argv[0] is the program name). Throws CLI::ParseError or
/// erp::ConfigError.
[[nodiscard]] RunConfig parse(int argc, const char* const* argv);

/// Runs one invocation; human-readable lines go to `out`, diagnostics to
/// `err`, JSON and CSV records to the output directory.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace erp::cli
