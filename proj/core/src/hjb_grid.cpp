#include "erp/hjb/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "erp/error.hpp"

namespace erp::hjb {
namespace {

struct Cell {
    std::size_t lo;
    double w;  // weight of lo+1
};

Cell locate(double x, double x0, double h, std::size_t n) {
    const double t = (x - x0) / h;
    if (t < -1e-9 || t > static_cast<double>(n - 1) + 1e-9) {
        std::ostringstream os;
        os << "point " << x << " lies outside the grid";
        throw DomainError(os.str());
    }
    const double tc = std::clamp(t, 0.0, static_cast<double>(n - 1));
    auto lo = static_cast<std::size_t>(std::floor(tc));
    lo = std::min(lo, n - 2);
    return {lo, tc - static_cast<double>(lo)};
}

double bilinear(const GridSpec& g, const Field& f, double S, double v) {
    const Cell ci = locate(S, 0.0, g.dS(), g.N1);
    const Cell cj = locate(v, -g.v_max, g.dv(), g.N2);
    const auto at = [&](std::size_t i, std::size_t j) { return f[g.index(i, j)]; };
    const double lower = (1.0 - cj.w) * at(ci.lo, cj.lo) + cj.w * at(ci.lo, cj.lo + 1);
    const double upper = (1.0 - cj.w) * at(ci.lo + 1, cj.lo) + cj.w * at(ci.lo + 1, cj.lo + 1);
    return (1.0 - ci.w) * lower + ci.w * upper;
}

}  // namespace

void GridSpec::validate() const {
    if (N1 < 3 || N2 < 3) throw ConfigError("grid needs N1, N2 >= 3");
    if (M < 2) throw ConfigError("grid needs M >= 2");
    if (!(S_max > 0.0) || !std::isfinite(S_max)) throw ConfigError("S_max must be positive");
    if (!(v_max > 0.0) || !std::isfinite(v_max)) throw ConfigError("v_max must be positive");
}

std::string GridSpec::label() const {
    std::ostringstream os;
    os << N1 << "x" << N2 << "x" << M;
    return os.str();
}

GridSpec GridSpec::parse(const std::string& text, double S_max, double v_max) {
    GridSpec g;
    g.S_max = S_max;
    g.v_max = v_max;
    char x1 = 0;
    char x2 = 0;
    std::istringstream is(text);
    long long n1 = 0;
    long long n2 = 0;
    long long m = 0;
    if (!(is >> n1 >> x1 >> n2 >> x2 >> m) || x1 != 'x' || x2 != 'x' || n1 <= 0 || n2 <= 0 || m <= 0) {
        throw ConfigError("grid must look like N1xN2xM, got '" + text + "'");
    }
    std::string rest;
    if (is >> rest) throw ConfigError("trailing characters in grid '" + text + "'");
    g.N1 = static_cast<std::size_t>(n1);
    g.N2 = static_cast<std::size_t>(n2);
    g.M = static_cast<std::size_t>(m);
    g.validate();
    return g;
}

double ValueSurface::value_at(double S, double v) const { return bilinear(grid, F, S, v); }

double ValueSurface::control_at(double S, double v) const { return bilinear(grid, phi, S, v); }

}  // namespace erp::hjb
