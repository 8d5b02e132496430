#include <benchmark/benchmark.h>

#include "erp/analytic/vanilla.hpp"
#include "erp/hjb/solver.hpp"
#include "erp/math/black_scholes.hpp"
#include "erp/mc/hedge_sim.hpp"

using namespace erp;

namespace {

const MarketParams kMarket{};

void BM_BlackScholesCall(benchmark::State& state) {
    double S = 4.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bs_call_price(S, 5.0, kMarket.r, kMarket.sigma, kMarket.T));
        S = S < 6.0 ? S + 1e-3 : 4.0;
    }
}
BENCHMARK(BM_BlackScholesCall);

void BM_BuyerExposureQuadrature(benchmark::State& state) {
    analytic::AnalyticOptions opt;
    opt.quadrature_nodes = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            analytic::buyer_exposure_call(kMarket, RiskFunction::exp_minus_one(), 5.0, 5.0, 2.0, opt).value);
    }
}
BENCHMARK(BM_BuyerExposureQuadrature)->Arg(50)->Arg(200);

void BM_AdiStep(benchmark::State& state) {
    hjb::GridSpec g;
    g.N1 = g.N2 = static_cast<std::size_t>(state.range(0));
    g.M = 2;
    const hjb::HjbProblem p{Side::Seller, Payoff::call(5.0), kMarket, RiskFunction::exp_minus_one(),
                            hjb::BoundaryPreset::CallPreset};
    const auto F = hjb::terminal_condition(p, g);
    const auto phi = hjb::control_update(F, p);
    const double dt = g.dtau(kMarket.T);
    for (auto _ : state) benchmark::DoNotOptimize(hjb::adi_step(F, phi, p, dt).F.data());
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_AdiStep)->Arg(81)->Arg(161)->Unit(benchmark::kMicrosecond);

void BM_MonteCarloExposure(benchmark::State& state) {
    mc::SimConfig cfg;
    cfg.n_paths = 8192;
    cfg.n_steps = 50;
    cfg.threads = static_cast<int>(state.range(0));
    const mc::HedgePolicy rule{Side::Seller, Payoff::call(5.0), kMarket};
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::simulate_exposure(Payoff::call(5.0), Side::Seller, 2.0, 5.0, kMarket,
                                                       RiskFunction::exp_minus_one(), cfg, rule)
                                     .value);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(cfg.n_paths * cfg.n_steps));
}
BENCHMARK(BM_MonteCarloExposure)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
