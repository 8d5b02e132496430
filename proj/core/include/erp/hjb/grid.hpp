#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace erp::hjb {

/// Uniform grid on [0, S_max] x [-v_max, v_max] with M time levels on [0, T].
struct GridSpec {
    double S_max = 10.0;
    double v_max = 5.0;
    std::size_t N1 = 161;  ///< S nodes
    std::size_t N2 = 161;  ///< v nodes
    std::size_t M = 1280;  ///< tau nodes

    /// N1, N2 >= 3, M >= 2, S_max and v_max positive and finite.
    void validate() const;

    [[nodiscard]] double dS() const noexcept { return S_max / static_cast<double>(N1 - 1); }
    [[nodiscard]] double dv() const noexcept { return 2.0 * v_max / static_cast<double>(N2 - 1); }
    [[nodiscard]] double dtau(double T) const noexcept { return T / static_cast<double>(M - 1); }

    [[nodiscard]] double S(std::size_t i) const noexcept {
        return S_max * static_cast<double>(i) / static_cast<double>(N1 - 1);
    }
    [[nodiscard]] double v(std::size_t j) const noexcept {
        const double n = static_cast<double>(N2 - 1);
        return v_max * (2.0 * static_cast<double>(j) - n) / n;
    }

    [[nodiscard]] std::size_t size() const noexcept { return N1 * N2; }
    [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * N2 + j; }

    /// "N1xN2xM", e.g. "161x161x1280".
    [[nodiscard]] std::string label() const;

    /// Parses "N1xN2xM"; S_max and v_max are taken from the arguments.
    static GridSpec parse(const std::string& text, double S_max, double v_max);

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

using Field = std::vector<double>;

/// Value function F(tau, S_i, v_j) on one time level, with the control
/// phi(tau, S_i, v_j) that accompanies it. Storage is row-major in S.
struct ValueSurface {
    GridSpec grid;
    double tau = 0.0;
    Field F;
    Field phi;

    ValueSurface() = default;
    ValueSurface(const GridSpec& g, double tau_level)
        : grid(g), tau(tau_level), F(g.size(), 0.0), phi(g.size(), 0.0) {}

    [[nodiscard]] double& at(std::size_t i, std::size_t j) noexcept { return F[grid.index(i, j)]; }
    [[nodiscard]] double at(std::size_t i, std::size_t j) const noexcept { return F[grid.index(i, j)]; }
    [[nodiscard]] double control(std::size_t i, std::size_t j) const noexcept { return phi[grid.index(i, j)]; }

    /// Bilinear interpolation of F; throws DomainError outside the grid.
    [[nodiscard]] double value_at(double S, double v) const;

    /// Bilinear interpolation of phi.
    [[nodiscard]] double control_at(double S, double v) const;
};

}  // namespace erp::hjb
