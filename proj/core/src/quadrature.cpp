#include "erp/math/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "erp/error.hpp"
#include "erp/math/normal.hpp"

namespace erp {
namespace {

// Number of eigenvalues below z of the Jacobi matrix of the physicists'
// Hermite recurrence (zero diagonal, off-diagonal sqrt(k/2)).
std::size_t hermite_roots_below(double z, std::size_t n) {
    std::size_t count = 0;
    double q = -z;
    for (std::size_t k = 0;;) {
        if (q < 0.0) ++count;
        if (++k == n) break;
        const double b2 = 0.5 * static_cast<double>(k);
        q = -z - b2 / (q != 0.0 ? q : 1e-300);
    }
    return count;
}

// Roots by Sturm bisection, polished by Newton on the orthonormal Hermite
// functions (polynomials times e^{-t^2/2}, physicists' weight), then
// rescaled to the standard normal density. Carrying the Gaussian factor
// keeps the recurrence finite for large n, where the bare polynomials
// overflow near the outer roots.
GaussRule build_hermite(std::size_t n) {
    constexpr double kPiM4 = 0.7511255444649425;  // pi^{-1/4}
    const double nd = static_cast<double>(n);
    const double bound = std::sqrt(2.0 * nd) + 1.0;
    auto recurrence = [n, nd](double z, double& value, double& derivative) {
        double p1 = kPiM4 * std::exp(-0.5 * z * z);
        double p2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double p3 = p2;
            p2 = p1;
            const double jd = static_cast<double>(j);
            p1 = z * std::sqrt(2.0 / (jd + 1.0)) * p2 - std::sqrt(jd / (jd + 1.0)) * p3;
        }
        value = p1;
        derivative = std::sqrt(2.0 * nd) * p2;  // exact at a root
    };
    std::vector<double> x(n), w(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k-th smallest root: the point where the count steps from k to k+1.
        double lo = -bound;
        double hi = bound;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            (hermite_roots_below(mid, n) > k ? hi : lo) = mid;
        }
        double z = 0.5 * (lo + hi);
        double value = 0.0;
        double derivative = 0.0;
        for (int it = 0; it < 3; ++it) {
            recurrence(z, value, derivative);
            if (derivative == 0.0) break;
            const double step = value / derivative;
            if (!(std::abs(step) < hi - lo + 1e-12)) break;
            z -= step;
        }
        recurrence(z, value, derivative);
        x[k] = z;
        w[k] = derivative != 0.0 ? 2.0 * std::exp(-z * z) / (derivative * derivative) : 0.0;
    }
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        rule.nodes[k] = std::numbers::sqrt2 * x[k];
        rule.weights[k] = w[k] * std::numbers::inv_sqrtpi;
    }
    return rule;
}

GaussRule build_legendre(std::size_t n) {
    constexpr double kEps = 1e-15;
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t m = (n + 1) / 2;
    const double nd = static_cast<double>(n);
    for (std::size_t i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                const double jd = static_cast<double>(j);
                p1 = ((2.0 * jd + 1.0) * z * p2 - jd * p3) / (jd + 1.0);
            }
            pp = nd * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= kEps) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

const GaussRule& cached(std::size_t n, GaussRule (*build)(std::size_t), std::map<std::size_t, std::unique_ptr<GaussRule>>& cache,
                        std::mutex& mu) {
    if (n == 0) {
        throw DomainError("quadrature needs at least one node");
    }
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (!slot) {
        slot = std::make_unique<GaussRule>(build(n));
    }
    return *slot;
}

double checked_eval(const std::function<double(double)>& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        std::ostringstream os;
        os << "integrand returned " << y << " at x=" << x;
        throw NonFinite(os.str());
    }
    return y;
}

}  // namespace

const GaussRule& gauss_hermite_rule(std::size_t n_nodes) {
    static std::map<std::size_t, std::unique_ptr<GaussRule>> cache;
    static std::mutex mu;
    return cached(n_nodes, &build_hermite, cache, mu);
}

const GaussRule& gauss_legendre_rule(std::size_t n_nodes) {
    static std::map<std::size_t, std::unique_ptr<GaussRule>> cache;
    static std::mutex mu;
    return cached(n_nodes, &build_legendre, cache, mu);
}

double gauss_weighted_integral(const std::function<double(double)>& f, std::size_t n_nodes,
                               std::span<const double> breakpoints) {
    std::vector<double> cuts;
    for (double b : breakpoints) {
        if (std::isfinite(b) && b > -kGaussTail && b < kGaussTail) {
            cuts.push_back(b);
        }
    }
    if (breakpoints.empty()) {
        const auto& rule = gauss_hermite_rule(n_nodes);
        double sum = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            sum += rule.weights[k] * checked_eval(f, rule.nodes[k]);
        }
        return sum;
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.insert(cuts.begin(), -kGaussTail);
    cuts.push_back(kGaussTail);

    const auto& rule = gauss_legendre_rule(n_nodes);
    double sum = 0.0;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const double half = 0.5 * (cuts[p + 1] - cuts[p]);
        const double mid = 0.5 * (cuts[p + 1] + cuts[p]);
        if (half <= 0.0) continue;
        double piece = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double x = mid + half * rule.nodes[k];
            piece += rule.weights[k] * checked_eval(f, x) * std_normal_pdf(x);
        }
        sum += half * piece;
    }
    return sum;
}

}  // namespace erp
