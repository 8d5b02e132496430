#include "erp/extract/extract.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "erp/error.hpp"

namespace erp::extract {
namespace {

Crossing worse(Crossing a, Crossing b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

void check_pair(const hjb::ValueSurface& seller, const hjb::ValueSurface& buyer) {
    if (!(seller.grid == buyer.grid)) {
        throw DomainError("seller and buyer surfaces live on different grids (" + seller.grid.label() + " vs " +
                          buyer.grid.label() + ")");
    }
    if (seller.F.size() != seller.grid.size() || buyer.F.size() != buyer.grid.size()) {
        throw DomainError("surface storage does not match its grid");
    }
}

NodePrice node_price(const hjb::ValueSurface& seller, const hjb::ValueSurface& buyer, std::size_t i,
                     CrossingRule rule) {
    const auto& g = seller.grid;
    for (std::size_t j = g.N2; j-- > 0;) {
        const double gap = seller.at(i, j) - buyer.at(i, j);
        if (!(gap > 0.0)) continue;
        if (j + 1 == g.N2) return {g.v(j), Crossing::Saturated};
        if (rule == CrossingRule::GridNode) return {g.v(j), Crossing::Ok};
        const double next = seller.at(i, j + 1) - buyer.at(i, j + 1);
        return {g.v(j) + g.dv() * gap / (gap - next), Crossing::Ok};
    }
    return {g.v(0), Crossing::EmptyCrossing};
}

}  // namespace

const char* to_string(Crossing c) noexcept {
    switch (c) {
        case Crossing::Ok: return "ok";
        case Crossing::Saturated: return "saturated";
        case Crossing::EmptyCrossing: return "empty";
    }
    return "?";
}

NodePrice extract_at_node(const hjb::ValueSurface& seller, const hjb::ValueSurface& buyer, std::size_t i,
                          CrossingRule rule) {
    check_pair(seller, buyer);
    if (i >= seller.grid.N1) {
        std::ostringstream os;
        os << "S index " << i << " outside grid with " << seller.grid.N1 << " nodes";
        throw DomainError(os.str());
    }
    return node_price(seller, buyer, i, rule);
}

ErpCurve extract_curve(const hjb::ValueSurface& seller, const hjb::ValueSurface& buyer,
                       std::span<const double> S_query, std::string problem, CrossingRule rule) {
    check_pair(seller, buyer);
    const auto& g = seller.grid;
    const double dS = g.dS();

    ErpCurve curve{g, std::move(problem), {}};
    curve.points.reserve(S_query.size());
    std::vector<NodePrice> nodal(g.N1);
    std::vector<char> done(g.N1, 0);
    const auto nodal_at = [&](std::size_t i) -> const NodePrice& {
        if (!done[i]) {
            nodal[i] = node_price(seller, buyer, i, rule);
            done[i] = 1;
        }
        return nodal[i];
    };

    double prev = -1.0;
    for (double S : S_query) {
        if (!(S > 0.0 && S < g.S_max)) {
            std::ostringstream os;
            os << "query spot " << S << " outside (0, " << g.S_max << ")";
            throw DomainError(os.str());
        }
        if (!(S > prev)) throw DomainError("query spots must be strictly increasing");
        prev = S;

        const double t = S / dS;
        const double nearest = std::round(t);
        if (std::abs(t - nearest) <= 1e-9 * std::max(1.0, t)) {
            const auto& n = nodal_at(static_cast<std::size_t>(nearest));
            curve.points.push_back({S, n.v, n.flag});
            continue;
        }
        const auto lo = static_cast<std::size_t>(std::floor(t));
        const auto& a = nodal_at(lo);
        const auto& b = nodal_at(lo + 1);
        curve.points.push_back({S, 0.5 * (a.v + b.v), worse(a.flag, b.flag)});
    }
    return curve;
}

std::vector<double> uniform_spots(double S_max, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = S_max * static_cast<double>(k + 1) / static_cast<double>(n + 1);
    }
    return out;
}

}  // namespace erp::extract
