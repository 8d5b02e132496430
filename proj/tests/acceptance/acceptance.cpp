// Acceptance run: one PASS/FAIL line per criterion, followed by the numbers
// behind it. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "erp/analytic/vanilla.hpp"
#include "erp/extract/extract.hpp"
#include "erp/extract/tables.hpp"
#include "erp/hjb/solver.hpp"
#include "erp/math/black_scholes.hpp"
#include "erp/mc/hedge_sim.hpp"

#ifdef ERP_HAVE_CLI
#include <filesystem>
#include <fstream>
#include <iterator>

#include "cli.hpp"
#endif

using namespace erp;
using extract::SpotValues;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream log;
};

using Criterion = std::function<void(Outcome&)>;

std::string row(const SpotValues& v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%8.4f %8.4f %8.4f %8.4f %8.4f", v[0], v[1], v[2], v[3], v[4]);
    return buf;
}

double max_abs_diff(const SpotValues& a, const SpotValues& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

hjb::GridSpec grid(std::size_t n1, std::size_t n2, std::size_t m, double v_max) {
    hjb::GridSpec g;
    g.S_max = 10.0;
    g.v_max = v_max;
    g.N1 = n1;
    g.N2 = n2;
    g.M = m;
    return g;
}

const MarketParams kTable1{};  // mu = r = 0.05, sigma = 0.3, T = 0.5
const RiskFunction kExp = RiskFunction::exp_minus_one();
const RiskFunction kPlus = RiskFunction::positive_part();

hjb::HjbProblem call_problem(Side side) {
    return {side, Payoff::call(5.0), kTable1, kExp, hjb::BoundaryPreset::CallPreset};
}

hjb::HjbProblem butterfly_problem(Side side) {
    return {side, Payoff::butterfly(4.0, 6.0), kTable1, kExp, hjb::BoundaryPreset::BoundedPayoffPreset};
}

// Printed rows of the worked examples.
const SpotValues kSellerAnalytic{-0.8592, -0.8362, -0.7892, -0.7023, -0.5492};
const SpotValues kBuyerAnalytic{6.3268, 5.6755, 4.7313, 3.6435, 2.5800};

void analytic_seller(Outcome& o) {
    SpotValues got{};
    for (std::size_t k = 0; k < got.size(); ++k) {
        got[k] = analytic::seller_exposure_call(kTable1, kExp, 5.0, extract::kReportSpots[k], 2.0).value;
    }
    const double err = max_abs_diff(got, kSellerAnalytic);
    o.pass = err <= 1e-4;
    o.log << "  got " << row(got) << "\n  max|diff| = " << err << " (tol 1e-4)\n";
}

void analytic_buyer(Outcome& o) {
    SpotValues got{};
    for (std::size_t k = 0; k < got.size(); ++k) {
        got[k] = analytic::buyer_exposure_call(kTable1, kExp, 5.0, extract::kReportSpots[k], 2.0).value;
    }
    const double err = max_abs_diff(got, kBuyerAnalytic);
    o.pass = err <= 1e-3;
    o.log << "  got " << row(got) << "\n  max|diff| = " << err << " (tol 1e-3)\n";
}

void check_ladder(Outcome& o, const char* name, const extract::ConvergenceTable& table,
                  const std::vector<SpotValues>& printed, const std::vector<double>& ratios, double tol) {
    o.log << "  " << name << " (benchmark " << table.benchmark.label << ")\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& tr = table.rows[r];
        const double err = max_abs_diff(tr.values, printed[r]);
        const bool ok = err <= tol;
        o.pass = o.pass && ok;
        char buf[96];
        std::snprintf(buf, sizeof buf, "  max|diff|=%.4f %s", err, ok ? "ok" : "OUT");
        o.log << "    " << tr.grid.label() << "  " << row(tr.values) << buf << '\n';
        o.log << "    " << std::string(tr.grid.label().size(), ' ') << "  " << row(printed[r]) << "  (printed)\n";
        if (tr.ratio && r >= 1 && r - 1 < ratios.size()) {
            const bool rok = std::abs(*tr.ratio - ratios[r - 1]) <= 1.0;
            o.pass = o.pass && rok;
            char rb[96];
            std::snprintf(rb, sizeof rb, "    ratio %.2f vs printed %.1f %s\n", *tr.ratio, ratios[r - 1],
                          rok ? "ok" : "OUT");
            o.log << rb;
        }
    }
}

void hjb_convergence(Outcome& o) {
    const std::vector<hjb::GridSpec> ladder{grid(21, 21, 160, 5), grid(41, 41, 320, 5), grid(81, 81, 640, 5),
                                            grid(161, 161, 1280, 5)};
    const std::vector<SpotValues> seller_rows{{-0.8604, -0.8399, -0.7981, -0.7216, -0.5889},
                                              {-0.8595, -0.8371, -0.7915, -0.7074, -0.5601},
                                              {-0.8593, -0.8364, -0.7898, -0.7039, -0.5528},
                                              {-0.8591, -0.8361, -0.7891, -0.7026, -0.5503}};
    const std::vector<SpotValues> buyer_rows{{6.3860, 5.7689, 4.8250, 3.7099, 2.6162},
                                             {6.3423, 5.6985, 4.7540, 3.6598, 2.5889},
                                             {6.3307, 5.6812, 4.7369, 3.6475, 2.5819},
                                             {6.3302, 5.6791, 4.7348, 3.6465, 2.5820}};
    const auto t0 = std::chrono::steady_clock::now();
    for (Side side : {Side::Seller, Side::Buyer}) {
        const auto problem = call_problem(side);
        const auto table =
            extract::convergence_table(problem, ladder, extract::analytic_benchmark(problem, 2.0), 2.0);
        if (side == Side::Seller) {
            check_ladder(o, "seller", table, seller_rows, {3.7, 3.1, 3.4}, 2e-3);
        } else {
            check_ladder(o, "buyer", table, buyer_rows, {4.1, 4.1, 1.4}, 2e-3);
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.log << "  wall time " << secs << " s for both ladders\n";
}

void butterfly_tables(Outcome& o) {
    const std::vector<hjb::GridSpec> ladder{grid(11, 11, 40, 3), grid(21, 21, 80, 3), grid(41, 41, 160, 3),
                                            grid(81, 81, 320, 3)};
    const std::vector<SpotValues> seller_rows{{-0.5654, -0.4601, -0.3767, -0.4398, -0.4925},
                                              {-0.5429, -0.4816, -0.4548, -0.4715, -0.5106},
                                              {-0.5445, -0.4919, -0.4696, -0.4832, -0.5172},
                                              {-0.5451, -0.4944, -0.4729, -0.4859, -0.5189}};
    const std::vector<SpotValues> buyer_rows{{-0.5480, -0.4491, -0.3658, -0.4112, -0.4385},
                                             {-0.5427, -0.4807, -0.4508, -0.4568, -0.4669},
                                             {-0.5444, -0.4914, -0.4665, -0.4704, -0.4763},
                                             {-0.5451, -0.4939, -0.4701, -0.4736, -0.4786}};
    const SpotValues seller_bench{-0.5453, -0.4951, -0.4739, -0.4867, -0.5194};
    const SpotValues buyer_bench{-0.5452, -0.4946, -0.4710, -0.4742, -0.4786};
    const auto bench_grid = grid(321, 321, 2560, 3);

    for (Side side : {Side::Seller, Side::Buyer}) {
        const auto problem = butterfly_problem(side);
        const auto t0 = std::chrono::steady_clock::now();
        const auto bench = extract::grid_benchmark(problem, bench_grid, 1.0);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const auto& printed_bench = side == Side::Seller ? seller_bench : buyer_bench;
        const double berr = max_abs_diff(bench.values, printed_bench);
        const bool bok = berr <= 2e-3 && secs <= 1800.0;
        o.pass = o.pass && bok;
        o.log << "  " << to_string(side) << " benchmark " << bench.label << "  " << row(bench.values) << '\n'
              << "  printed                   " << row(printed_bench) << "  max|diff|=" << berr << " in " << secs
              << " s " << (bok ? "ok" : "OUT") << '\n';
        const auto table = extract::convergence_table(problem, ladder, bench, 1.0);
        check_ladder(o, side == Side::Seller ? "seller" : "buyer", table,
                     side == Side::Seller ? seller_rows : buyer_rows, {}, 5e-3);
    }
}

void formula_vs_pde(Outcome& o) {
    const auto g = grid(161, 161, 1280, 5);
    const auto seller = hjb::solve(call_problem(Side::Seller), g).surface;
    const auto buyer = hjb::solve(call_problem(Side::Buyer), g).surface;
    std::vector<double> spots;
    for (double S : extract::uniform_spots(g.S_max)) {
        if (S >= 1.0 && S <= 8.0 && S < 0.9 * g.S_max) spots.push_back(S);
    }
    const auto curve = extract::extract_curve(seller, buyer, spots);
    double worst = 0.0;
    double at = 0.0;
    for (const auto& p : curve.points) {
        const double exact = analytic::erp_call(kTable1, kExp, 5.0, p.S);
        if (std::abs(p.v - exact) > worst) {
            worst = std::abs(p.v - exact);
            at = p.S;
        }
    }
    o.pass = worst <= 0.05;
    o.log << "  " << curve.points.size() << " spots in [1, 8], max|extracted - closed form| = " << worst
          << " at S=" << at << " (tol 0.05, dv = " << g.dv() << ")\n";

    // Not part of the verdict: the same surfaces read with a sub-grid crossing.
    const auto fine = extract::extract_curve(seller, buyer, spots, {}, extract::CrossingRule::Linear);
    double fine_worst = 0.0;
    for (const auto& p : fine.points) {
        fine_worst = std::max(fine_worst, std::abs(p.v - analytic::erp_call(kTable1, kExp, 5.0, p.S)));
    }
    o.log << "  (info) linear crossing rule on the same surfaces: max error " << fine_worst << '\n';
}

void price_ordering(Outcome& o) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uS(1.0, 20.0);
    std::uniform_real_distribution<double> uK(1.0, 20.0);
    std::uniform_real_distribution<double> uSig(0.1, 0.6);
    std::uniform_real_distribution<double> uT(0.1, 2.0);
    int violations = 0;
    double worst = 0.0;
    for (int n = 0; n < 50; ++n) {
        MarketParams mp;
        const double S = uS(rng);
        const double K = uK(rng);
        mp.sigma = uSig(rng);
        mp.T = uT(rng);
        mp.mu = mp.r;
        const double c = bs_call_price(S, K, mp.r, mp.sigma, mp.T);
        const double p = bs_put_price(S, K, mp.r, mp.sigma, mp.T);
        for (RiskFunction R : {kExp, kPlus}) {
            const double ec = analytic::erp_call(mp, R, K, S);
            const double ep = analytic::erp_put(mp, R, K, S);
            const double slack = 1e-9 * std::max(1.0, c + p);
            if (ec > c + slack) ++violations;
            if (ep < p - slack) ++violations;
            worst = std::max({worst, ec - c, p - ep});
        }
    }
    o.log << "  50 tuples x 2 risk functions: " << violations << " ordering violations (max excess " << worst << ")\n";
    o.pass = violations == 0;

    // Butterfly: ERP - BS should change sign near the middle strike.
    const auto g = grid(161, 161, 1280, 3);
    const auto seller = hjb::solve(butterfly_problem(Side::Seller), g).surface;
    const auto buyer = hjb::solve(butterfly_problem(Side::Buyer), g).surface;
    std::vector<double> spots;
    for (int k = 0; k <= 40; ++k) spots.push_back(3.0 + 0.1 * k);
    const auto side_means = [&](extract::CrossingRule rule) {
        const auto curve = extract::extract_curve(seller, buyer, spots, {}, rule);
        const auto rows = extract::compare_vs_frictionless(curve, Payoff::butterfly(4.0, 6.0), kTable1);
        double below = 0.0;
        double above = 0.0;
        int below_n = 0;
        int above_n = 0;
        for (const auto& r : rows) {
            if (r.S >= 4.0 && r.S <= 4.8) {
                below += r.abs_diff;
                ++below_n;
            }
            if (r.S >= 5.2 && r.S <= 6.0) {
                above += r.abs_diff;
                ++above_n;
            }
        }
        return std::pair{below / below_n, above / above_n};
    };
    const auto [below, above] = side_means(extract::CrossingRule::GridNode);
    const bool sign_change = below < 0.0 && above > 0.0;
    o.pass = o.pass && sign_change;
    o.log << "  butterfly mean(ERP-BS) on S in [4,4.8]: " << below << ", on [5.2,6]: " << above
          << (sign_change ? "  sign change ok" : "  NO sign change") << " (dv = " << g.dv() << ")\n";
    const auto [fb, fa] = side_means(extract::CrossingRule::Linear);
    o.log << "  (info) linear crossing rule: " << fb << " and " << fa << '\n';
}

void mc_oracle(Outcome& o) {
    mc::SimConfig cfg;  // 200k paths, 250 steps, antithetic
    struct Case {
        const char* name;
        Payoff payoff;
        double exact;
    };
    const std::vector<Case> cases{{"call(5)", Payoff::call(5.0), analytic::erp_call(kTable1, kExp, 5.0, 5.0)},
                                  {"put(5)", Payoff::put(5.0), analytic::erp_put(kTable1, kExp, 5.0, 5.0)}};
    for (const auto& c : cases) {
        const auto est = mc::erp_q(c.payoff, kTable1, kExp, 5.0, cfg);
        const double z = std::abs(est.price - c.exact) / est.std_error;
        const bool ok = z <= 3.0;
        o.pass = o.pass && ok;
        o.log << "  " << c.name << ": mc " << est.price << " +- " << est.std_error << ", closed form " << c.exact
              << ", |z| = " << z << (ok ? " ok" : " OUT") << '\n';
    }

    // Buyer of Z at v against seller of -Z at -v on matched seeds.
    mc::SimConfig small;
    small.n_paths = 20'000;
    small.n_steps = 50;
    std::size_t mismatched = 0;
    const std::vector<Payoff> claims{Payoff::call(5.0), Payoff::call_combo({{1.0, 4.0}, {-2.0, 5.0}, {1.0, 6.0}})};
    for (const auto& z : claims) {
        for (RiskFunction R : {kExp, kPlus}) {
            const auto b = mc::simulate_losses(z, Side::Buyer, 0.6, 5.0, kTable1, R, small);
            const auto s = mc::simulate_losses(z.negated(), Side::Seller, -0.6, 5.0, kTable1, R, small);
            for (std::size_t k = 0; k < b.size(); ++k) mismatched += b[k] != s[k];
        }
    }
    o.pass = o.pass && mismatched == 0;
    o.log << "  equivalence: " << mismatched << " of " << 4 * small.n_paths << " paths differ bitwise\n";
}

void exposure_properties(Outcome& o) {
    int bad = 0;
    std::vector<double> vs;
    for (int k = -20; k <= 20; ++k) vs.push_back(0.25 * k);
    using Fn = std::function<double(RiskFunction, double, double)>;
    struct Exposure {
        const char* name;
        Side side;
        Fn f;
    };
    const std::vector<Exposure> exposures{
        {"seller_call", Side::Seller,
         [](RiskFunction R, double S, double v) { return analytic::seller_exposure_call(kTable1, R, 5, S, v).value; }},
        {"buyer_call", Side::Buyer,
         [](RiskFunction R, double S, double v) { return analytic::buyer_exposure_call(kTable1, R, 5, S, v).value; }},
        {"seller_put", Side::Seller,
         [](RiskFunction R, double S, double v) { return analytic::seller_exposure_put(kTable1, R, 5, S, v).value; }},
        {"buyer_put", Side::Buyer,
         [](RiskFunction R, double S, double v) { return analytic::buyer_exposure_put(kTable1, R, 5, S, v).value; }},
    };
    for (const auto& e : exposures) {
        for (RiskFunction R : {kExp, kPlus}) {
            for (double S : {1.0, 3.0, 5.0, 7.0, 9.0}) {
                double prev = e.f(R, S, vs.front());
                for (std::size_t k = 1; k < vs.size(); ++k) {
                    const double cur = e.f(R, S, vs[k]);
                    const bool mono = e.side == Side::Seller ? cur <= prev + 1e-12 : cur >= prev - 1e-12;
                    bad += !mono;
                    prev = cur;
                }
                // Limits: the side that receives a large cash amount tends to the
                // lower bound; the other side's risk grows without bound.
                const double big = 200.0;
                const double lo_lim = e.side == Side::Seller ? e.f(R, S, big) : e.f(R, S, -big);
                const double hi_lim = e.side == Side::Seller ? e.f(R, S, -big) : e.f(R, S, big);
                bad += std::abs(lo_lim - R.lower_bound()) > 1e-8;
                bad += !(hi_lim > 100.0);
            }
        }
    }
    o.log << "  closed forms: " << bad << " monotonicity/limit violations\n";

    mc::SimConfig cfg;
    cfg.n_paths = 4'000;
    cfg.n_steps = 40;
    int mc_bad = 0;
    const Payoff fly = Payoff::butterfly(4.0, 6.0);
    for (Side side : {Side::Seller, Side::Buyer}) {
        double prev = mc::simulate_exposure(fly, side, -2.0, 5.0, kTable1, kExp, cfg).value;
        for (double v = -1.75; v <= 2.0; v += 0.25) {
            const double cur = mc::simulate_exposure(fly, side, v, 5.0, kTable1, kExp, cfg).value;
            mc_bad += side == Side::Seller ? !(cur <= prev + 1e-12) : !(cur >= prev - 1e-12);
            prev = cur;
        }
    }
    o.log << "  Monte Carlo butterfly (common paths): " << mc_bad << " monotonicity violations\n";

    int pde_bad = 0;
    int interior_bad = 0;
    const auto g = grid(41, 41, 320, 5);
    for (Side side : {Side::Seller, Side::Buyer}) {
        const auto s = hjb::solve(call_problem(side), g).surface;
        for (std::size_t i = 0; i < g.N1; ++i) {
            for (std::size_t j = 1; j < g.N2; ++j) {
                const double d = s.at(i, j) - s.at(i, j - 1);
                const bool viol = side == Side::Seller ? d > 1e-6 : d < -1e-6;
                pde_bad += viol;
                const bool inside = i > 0 && i + 1 < g.N1 && j > 1 && j + 1 < g.N2;
                interior_bad += viol && inside;
            }
        }
    }
    o.log << "  HJB surfaces 41x41x320: " << pde_bad << " monotonicity violations in v\n";
    o.log << "  (info) of which away from the Dirichlet edges: " << interior_bad << "\n";
    o.pass = bad == 0 && mc_bad == 0 && pde_bad == 0;
}

void hedge_character(Outcome& o) {
    const auto g = grid(161, 161, 1280, 5);
    const auto seller = hjb::solve(call_problem(Side::Seller), g).surface;
    const auto buyer = hjb::solve(call_problem(Side::Buyer), g).surface;
    double seller_err = 0.0;
    double err_S = 0.0;
    double err_v = 0.0;
    double buyer_max = 0.0;
    for (std::size_t i = 0; i < g.N1; ++i) {
        const double S = g.S(i);
        if (S < 0.2 * g.S_max - 1e-12 || S > 0.8 * g.S_max + 1e-12) continue;
        const double delta = bs_call_delta(S, 5.0, kTable1.r, kTable1.sigma, kTable1.T);
        for (std::size_t j = 0; j < g.N2; ++j) {
            const double v = g.v(j);
            if (std::abs(v) > 0.5 * g.v_max + 1e-12) continue;
            const double e = std::abs(seller.control(i, j) - delta);
            if (e > seller_err) {
                seller_err = e;
                err_S = S;
                err_v = v;
            }
            buyer_max = std::max(buyer_max, std::abs(buyer.control(i, j)));
        }
    }
    o.log << "  call seller max|phi - BS delta| = " << seller_err << ", call buyer max|phi| = " << buyer_max
          << " (tol 5e-2)\n";
    o.log << "  (info) seller worst node at S = " << err_S << ", v = " << err_v << "\n";
    o.pass = seller_err <= 5e-2 && buyer_max <= 5e-2;

    // Butterfly seller: where the frictionless delta is negative the seller
    // holds nothing; where it is positive the hedge follows it.
    const auto gb = grid(161, 161, 1280, 3);
    const auto fly = hjb::solve(butterfly_problem(Side::Seller), gb).surface;
    const Payoff z = Payoff::butterfly(4.0, 6.0);
    double trunc = 0.0;
    double follow = 0.0;
    for (std::size_t i = 0; i < gb.N1; ++i) {
        const double S = gb.S(i);
        const double delta = bs_combo_price_delta(z, S, kTable1.r, kTable1.sigma, kTable1.T).delta;
        const double phi = fly.control_at(S, 1.0);
        if (S >= 5.5 && S <= 8.0) trunc = std::max(trunc, phi);
        if (S >= 2.0 && S <= 4.5) follow = std::max(follow, std::abs(phi - std::max(delta, 0.0)));
    }
    const bool fig8 = trunc <= 5e-2 && follow <= 1e-1;
    o.pass = o.pass && fig8;
    o.log << "  butterfly seller at v0=1: max phi on S in [5.5,8] = " << trunc
          << " (tol 5e-2), max|phi - delta^+| on [2,4.5] = " << follow << " (tol 1e-1)\n";
}

void determinism(Outcome& o) {
    const auto g = grid(81, 81, 320, 3);
    hjb::SolverOptions one;
    hjb::SolverOptions many;
    many.threads = 4;
    bool same = true;
    for (Side side : {Side::Seller, Side::Buyer}) {
        const auto a = hjb::solve(butterfly_problem(side), g, one).surface;
        const auto b = hjb::solve(butterfly_problem(side), g, many).surface;
        same = same && a.F == b.F && a.phi == b.phi;
    }
    o.log << "  HJB surfaces, 1 vs 4 threads: " << (same ? "identical" : "DIFFERENT") << '\n';

    mc::SimConfig c1;
    c1.n_paths = 50'000;
    c1.n_steps = 50;
    mc::SimConfig c3 = c1;
    c3.threads = 3;
    const auto e1 = mc::erp_q(Payoff::butterfly(4.0, 6.0), kTable1, kExp, 5.0, c1);
    const auto e3 = mc::erp_q(Payoff::butterfly(4.0, 6.0), kTable1, kExp, 5.0, c3);
    const auto e1b = mc::erp_q(Payoff::butterfly(4.0, 6.0), kTable1, kExp, 5.0, c1);
    const bool mc_same = e1.price == e3.price && e1.std_error == e3.std_error && e1.price == e1b.price;
    o.log << "  Monte Carlo ERP, repeated and 1 vs 3 threads: " << (mc_same ? "identical" : "DIFFERENT") << '\n';
    same = same && mc_same;

#ifdef ERP_HAVE_CLI
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "erp_acceptance_determinism";
    fs::remove_all(root);
    const auto run_cli = [&](const std::string& tag, const char* threads) {
        const std::string out = (root / tag).string();
        std::vector<const char*> argv{"erp",      "extract", "--payoff", "butterfly", "--grid",
                                      "41x41x160", "--threads", threads, "--out", out.c_str()};
        std::ostringstream sink;
        const int rc = cli::run(static_cast<int>(argv.size()), argv.data(), sink, sink);
        return rc == 0 ? out : std::string();
    };
    const auto slurp = [](const fs::path& p) {
        std::ifstream is(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(is), {});
    };
    const auto a = run_cli("a", "1");
    const auto b = run_cli("b", "1");
    const auto c = run_cli("c", "3");
    bool cli_same = !a.empty() && !b.empty() && !c.empty();
    for (const char* f : {"erp_curve.csv", "extract.json"}) {
        if (!cli_same) break;
        const auto fa = slurp(fs::path(a) / f);
        cli_same = !fa.empty() && fa == slurp(fs::path(b) / f) && fa == slurp(fs::path(c) / f);
    }
    fs::remove_all(root);
    o.log << "  CLI extract outputs, repeated and 1 vs 3 threads: " << (cli_same ? "byte-identical" : "DIFFERENT")
          << '\n';
    same = same && cli_same;
#endif
    o.pass = same;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Criterion>> criteria{
        {"analytic seller exposure reproduces the printed benchmark row", analytic_seller},
        {"analytic buyer exposure reproduces the printed benchmark row", analytic_buyer},
        {"HJB call convergence ladders match printed values and ratios", hjb_convergence},
        {"butterfly tables and 321x321x2560 benchmark", butterfly_tables},
        {"extracted ERP curve agrees with the closed form on S in [1,8]", formula_vs_pde},
        {"ERP ordering vs Black-Scholes and butterfly sign change", price_ordering},
        {"Monte Carlo ERP within 3 se of closed forms; path-wise equivalence", mc_oracle},
        {"monotonicity in v and limits of all exposures", exposure_properties},
        {"optimal control vs Black-Scholes delta; butterfly hedge truncation", hedge_character},
        {"determinism across runs and thread counts", determinism},
    };

    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            criteria[k].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.log << "  exception: " << e.what() << '\n';
        }
        std::printf("%s %2zu %s\n%s", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.log.str().c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
