#include "erp/mc/hedge_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "erp/error.hpp"
#include "erp/math/black_scholes.hpp"
#include "erp/math/root.hpp"
#include "erp/parallel.hpp"

namespace erp::mc {
namespace {

std::mt19937_64 batch_engine(std::uint64_t seed, std::size_t batch) {
    const auto b = static_cast<std::uint64_t>(batch);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32), 0x45525051u};
    return std::mt19937_64(seq);
}

double risk_of(RiskFunction R, double x) {
    if (R.kind() == RiskFunction::Kind::ExpMinusOne && x > kExpArgumentLimit) {
        std::ostringstream os;
        os << "exponential risk argument " << x << " exceeds " << kExpArgumentLimit;
        throw Unstable(os.str());
    }
    return R.eval(x);
}

double admissible(double phi, double tau, double S) {
    if (!(phi >= 0.0)) {
        std::ostringstream os;
        os << "inadmissible stock holding " << phi << " at tau=" << tau << ", S=" << S;
        throw DomainError(os.str());
    }
    return phi;
}

// Generates the shared stock paths batch by batch and hands each path to
// `visit(path_index, normals)`. Antithetic pairs occupy indices (2k, 2k+1).
template <class Visit>
void for_each_path(const SimConfig& cfg, Visit&& visit) {
    const std::size_t n_batches = (cfg.n_paths + kBatchPaths - 1) / kBatchPaths;
    parallel_for(n_batches, cfg.threads, [&](std::size_t b0, std::size_t b1) {
        std::vector<double> z(cfg.n_steps);
        std::vector<double> z_anti(cfg.n_steps);
        for (std::size_t b = b0; b < b1; ++b) {
            auto engine = batch_engine(cfg.seed, b);
            std::normal_distribution<double> normal;
            const std::size_t first = b * kBatchPaths;
            const std::size_t last = std::min(cfg.n_paths, first + kBatchPaths);
            for (std::size_t p = first; p < last; ++p) {
                if (cfg.antithetic && (p - first) % 2 == 1) {
                    visit(p, z_anti);
                    continue;
                }
                for (std::size_t k = 0; k < cfg.n_steps; ++k) {
                    z[k] = normal(engine);
                    z_anti[k] = -z[k];
                }
                visit(p, z);
            }
        }
    });
}

struct StepConstants {
    double dt;
    double drift;
    double diffusion;
    double growth;
};

StepConstants step_constants(const MarketParams& mp, const SimConfig& cfg) {
    const double dt = mp.T / static_cast<double>(cfg.n_steps);
    return {dt, (mp.r - 0.5 * mp.sigma * mp.sigma) * dt, mp.sigma * std::sqrt(dt), std::exp(mp.r * dt)};
}

Estimate summarize(const std::vector<double>& losses, bool antithetic) {
    const std::size_t stride = antithetic ? 2 : 1;
    const std::size_t n = losses.size() / stride;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = antithetic ? 0.5 * (losses[2 * k] + losses[2 * k + 1]) : losses[k];
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / static_cast<double>(n);
    double se = 0.0;
    if (n > 1) {
        const double var = std::max(0.0, (sum_sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1));
        se = std::sqrt(var / static_cast<double>(n));
    }
    return {mean, se};
}

}  // namespace

void SimConfig::validate() const {
    if (n_paths < 1) throw ConfigError("n_paths must be at least 1");
    if (n_steps < 1) throw ConfigError("n_steps must be at least 1");
    if (antithetic && n_paths % 2 != 0) throw ConfigError("antithetic sampling needs an even n_paths");
    if (threads < 1) throw ConfigError("threads must be at least 1");
}

double replication_delta(const Payoff& payoff, double S, double tau, const MarketParams& mp) {
    return bs_combo_price_delta(payoff, S, mp.r, mp.sigma, tau).delta;
}

double HedgePolicy::operator()(double tau, double S) const {
    const double pi = replication_delta(payoff, S, tau, mp);
    return side == Side::Seller ? std::max(pi, 0.0) : std::max(-pi, 0.0);
}

std::vector<double> simulate_losses(const Payoff& payoff, Side side, double v, double S, const MarketParams& mp,
                                    RiskFunction R, const SimConfig& cfg, const HoldingRule& rule) {
    mp.validate(/*allow_zero_vol=*/true);
    cfg.validate();
    if (!std::isfinite(S) || S < 0.0) throw DomainError("spot must be finite and nonnegative");
    if (!std::isfinite(v)) throw DomainError("contract price must be finite");

    const HedgePolicy policy{side, payoff, mp};
    const HoldingRule hold = rule ? rule : HoldingRule(std::cref(policy));
    const auto c = step_constants(mp, cfg);
    std::vector<double> losses(cfg.n_paths);

    for_each_path(cfg, [&](std::size_t p, const std::vector<double>& z) {
        double spot = S;
        double wealth = v;
        for (std::size_t k = 0; k < cfg.n_steps; ++k) {
            const double tau = mp.T - static_cast<double>(k) * c.dt;
            const double phi = admissible(hold(tau, spot), tau, spot);
            const double next = spot * std::exp(c.drift + c.diffusion * z[k]);
            if (side == Side::Seller) {
                wealth = (wealth - phi * spot) * c.growth + phi * next;
            } else {
                wealth = (wealth + phi * spot) * c.growth - phi * next;
            }
            spot = next;
        }
        const double claim = payoff.eval(spot);
        losses[p] = side == Side::Seller ? risk_of(R, claim - wealth) : risk_of(R, wealth - claim);
    });
    return losses;
}

Estimate simulate_exposure(const Payoff& payoff, Side side, double v, double S, const MarketParams& mp,
                           RiskFunction R, const SimConfig& cfg, const HoldingRule& rule) {
    return summarize(simulate_losses(payoff, side, v, S, mp, R, cfg, rule), cfg.antithetic);
}

ErpEstimate erp_q(const Payoff& payoff, const MarketParams& mp, RiskFunction R, double S, const SimConfig& cfg,
                  double root_tol) {
    mp.validate(/*allow_zero_vol=*/true);
    cfg.validate();
    if (!std::isfinite(S) || S < 0.0) throw DomainError("spot must be finite and nonnegative");

    // Wealth is affine in the initial price: v_T(v) = v * B + v_T(0), so one
    // pass records B, both zero-start hedge accounts and the claim per path.
    struct PathRecord {
        double claim;
        double bond;
        double seller_gain;
        double buyer_gain;
    };
    const auto c = step_constants(mp, cfg);
    std::vector<PathRecord> rec(cfg.n_paths);
    for_each_path(cfg, [&](std::size_t p, const std::vector<double>& z) {
        double spot = S;
        double bond = 1.0;
        double ws = 0.0;
        double wb = 0.0;
        for (std::size_t k = 0; k < cfg.n_steps; ++k) {
            const double tau = mp.T - static_cast<double>(k) * c.dt;
            const double pi = replication_delta(payoff, spot, tau, mp);
            const double phi_s = std::max(pi, 0.0);
            const double phi_b = std::max(-pi, 0.0);
            const double next = spot * std::exp(c.drift + c.diffusion * z[k]);
            ws = (ws - phi_s * spot) * c.growth + phi_s * next;
            wb = (wb + phi_b * spot) * c.growth - phi_b * next;
            bond *= c.growth;
            spot = next;
        }
        rec[p] = {payoff.eval(spot), bond, ws, wb};
    });

    const std::size_t stride = cfg.antithetic ? 2 : 1;
    const std::size_t n_samples = cfg.n_paths / stride;
    // Per-sample seller-minus-buyer risk at price v.
    const auto sample_gap = [&](std::size_t k, double v) {
        double acc = 0.0;
        for (std::size_t q = 0; q < stride; ++q) {
            const auto& r = rec[k * stride + q];
            acc += risk_of(R, r.claim - (v * r.bond + r.seller_gain)) - risk_of(R, (v * r.bond + r.buyer_gain) - r.claim);
        }
        return acc / static_cast<double>(stride);
    };
    const auto balance = [&](double v) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n_samples; ++k) sum += sample_gap(k, v);
        return sum / static_cast<double>(n_samples);
    };

    const double discount = std::exp(-mp.r * mp.T);
    ErpEstimate out;
    if (const auto sup = payoff.sup_bound()) {
        out.bracket_lo = -*sup * discount - 1.0;
        out.bracket_hi = *sup * discount + 1.0;
    } else {
        out.bracket_lo = 0.0;
        out.bracket_hi = bs_combo_price_delta(payoff, S, mp.r, mp.sigma, mp.T).price + payoff.max_strike();
    }
    out.price = bracketed_root(balance, out.bracket_lo, out.bracket_hi, root_tol);

    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double x = sample_gap(k, out.price);
        sum += x;
        sum_sq += x * x;
    }
    const double n = static_cast<double>(n_samples);
    const double mean = sum / n;
    const double var = n > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
    const double h = 1e-4 * std::max(1.0, std::abs(out.price));
    const double slope = (balance(out.price + h) - balance(out.price - h)) / (2.0 * h);
    out.std_error = slope != 0.0 ? std::sqrt(var / n) / std::abs(slope) : 0.0;
    return out;
}

}  // namespace erp::mc
