#pragma once

#include <string_view>

namespace erp {

/// Convex, nondecreasing penalty on terminal shortfall with R(0) = 0 and a
/// finite lower bound.
///
///   PositivePart:  R(x) = max(x, 0),   lower bound 0
///   ExpMinusOne:   R(x) = e^x - 1,     lower bound -1
class RiskFunction {
public:
    enum class Kind { PositivePart, ExpMinusOne };

    constexpr RiskFunction() noexcept = default;
    constexpr explicit RiskFunction(Kind kind) noexcept : kind_(kind) {}

    static constexpr RiskFunction positive_part() noexcept { return RiskFunction(Kind::PositivePart); }
    static constexpr RiskFunction exp_minus_one() noexcept { return RiskFunction(Kind::ExpMinusOne); }

    [[nodiscard]] constexpr Kind kind() const noexcept { return kind_; }

    [[nodiscard]] double eval(double x) const noexcept;

    /// Right derivative D+R(x); equals 1 at the kink of PositivePart.
    [[nodiscard]] double right_derivative(double x) const noexcept;

    [[nodiscard]] constexpr double lower_bound() const noexcept {
        return kind_ == Kind::PositivePart ? 0.0 : -1.0;
    }

    [[nodiscard]] std::string_view name() const noexcept {
        return kind_ == Kind::PositivePart ? "plus" : "exp";
    }

    friend constexpr bool operator==(RiskFunction, RiskFunction) noexcept = default;

private:
    Kind kind_ = Kind::ExpMinusOne;
};

/// Largest argument accepted by ExpMinusOne before results are flagged unstable.
inline constexpr double kExpArgumentLimit = 700.0;

}  // namespace erp
