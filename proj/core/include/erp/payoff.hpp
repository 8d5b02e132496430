#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace erp {

/// One leg of a call combination: weight * (S - strike)^+.
struct CallLeg {
    double weight = 1.0;
    double strike = 0.0;
};

/// European terminal payoff Z(S_T).
///
/// Call, Put and Butterfly are the public claim kinds and are nonnegative.
/// CallCombo is a signed linear combination of calls; it also carries the
/// negated claim -Z used to express a buyer as a seller of the opposite
/// position.
class Payoff {
public:
    struct Call {
        double strike;
    };
    struct Put {
        double strike;
    };
    struct Butterfly {
        double lower;
        double upper;
        [[nodiscard]] double middle() const noexcept { return 0.5 * (lower + upper); }
    };
    struct CallCombo {
        std::vector<CallLeg> legs;
    };
    using Variant = std::variant<Call, Put, Butterfly, CallCombo>;

    static Payoff call(double strike);
    static Payoff put(double strike);
    /// (S-K1)^+ - 2(S-(K1+K2)/2)^+ + (S-K2)^+; requires 0 <= K1 < K2.
    static Payoff butterfly(double lower, double upper);
    static Payoff call_combo(std::vector<CallLeg> legs);

    [[nodiscard]] const Variant& variant() const noexcept { return value_; }

    [[nodiscard]] bool is_call() const noexcept { return std::holds_alternative<Call>(value_); }
    [[nodiscard]] bool is_put() const noexcept { return std::holds_alternative<Put>(value_); }
    [[nodiscard]] bool is_butterfly() const noexcept { return std::holds_alternative<Butterfly>(value_); }
    [[nodiscard]] bool is_combo() const noexcept { return std::holds_alternative<CallCombo>(value_); }

    [[nodiscard]] double eval(double S) const noexcept;

    /// Call-leg decomposition for every kind except Put.
    [[nodiscard]] std::vector<CallLeg> call_legs() const;

    [[nodiscard]] bool is_bounded() const noexcept;

    /// sup |Z(S)| over S >= 0, present only for bounded payoffs.
    [[nodiscard]] std::optional<double> sup_bound() const;

    /// Largest strike appearing in the payoff.
    [[nodiscard]] double max_strike() const noexcept;

    /// Strikes at which the payoff has a kink, ascending and deduplicated.
    [[nodiscard]] std::vector<double> kinks() const;

    /// -Z as a CallCombo with negated weights. Throws UnsupportedPayoff for Put.
    [[nodiscard]] Payoff negated() const;

    /// Short human-readable identifier, e.g. "call(K=5)".
    [[nodiscard]] std::string describe() const;

private:
    explicit Payoff(Variant v) : value_(std::move(v)) {}
    Variant value_;
};

}  // namespace erp
