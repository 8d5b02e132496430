#include "erp/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "erp/error.hpp"

namespace erp {
namespace {

double sum_legs(const std::vector<CallLeg>& legs, double S) noexcept {
    double z = 0.0;
    for (const auto& leg : legs) {
        z += leg.weight * std::max(S - leg.strike, 0.0);
    }
    return z;
}

std::vector<CallLeg> butterfly_legs(const Payoff::Butterfly& b) {
    return {{1.0, b.lower}, {-2.0, b.middle()}, {1.0, b.upper}};
}

void check_strike(double K, const char* what) {
    if (!std::isfinite(K) || K < 0.0) {
        throw DomainError(std::string(what) + " must be finite and nonnegative");
    }
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Payoff Payoff::call(double strike) {
    check_strike(strike, "call strike");
    return Payoff(Call{strike});
}

Payoff Payoff::put(double strike) {
    check_strike(strike, "put strike");
    return Payoff(Put{strike});
}

Payoff Payoff::butterfly(double lower, double upper) {
    check_strike(lower, "butterfly K1");
    check_strike(upper, "butterfly K2");
    if (!(lower < upper)) {
        throw DomainError("butterfly requires K1 < K2");
    }
    return Payoff(Butterfly{lower, upper});
}

Payoff Payoff::call_combo(std::vector<CallLeg> legs) {
    if (legs.empty()) {
        throw DomainError("call combination needs at least one leg");
    }
    for (const auto& leg : legs) {
        check_strike(leg.strike, "combo strike");
        if (!std::isfinite(leg.weight)) {
            throw DomainError("combo weight must be finite");
        }
    }
    return Payoff(CallCombo{std::move(legs)});
}

double Payoff::eval(double S) const noexcept {
    return std::visit(
        overloaded{
            [S](const Call& c) { return 1.0 * std::max(S - c.strike, 0.0); },
            [S](const Put& p) { return std::max(p.strike - S, 0.0); },
            [S](const Butterfly& b) {
                if (S <= b.lower || S >= b.upper) {
                    return 0.0;
                }
                return std::max(sum_legs(butterfly_legs(b), S), 0.0);
            },
            [S](const CallCombo& c) { return sum_legs(c.legs, S); },
        },
        value_);
}

std::vector<CallLeg> Payoff::call_legs() const {
    return std::visit(overloaded{
                          [](const Call& c) { return std::vector<CallLeg>{{1.0, c.strike}}; },
                          [](const Put&) -> std::vector<CallLeg> {
                              throw UnsupportedPayoff("a put has no call-leg decomposition");
                          },
                          [](const Butterfly& b) { return butterfly_legs(b); },
                          [](const CallCombo& c) { return c.legs; },
                      },
                      value_);
}

bool Payoff::is_bounded() const noexcept {
    return std::visit(overloaded{
                          [](const Call&) { return false; },
                          [](const Put&) { return true; },
                          [](const Butterfly&) { return true; },
                          [](const CallCombo& c) {
                              double slope = 0.0;
                              double scale = 0.0;
                              for (const auto& leg : c.legs) {
                                  slope += leg.weight;
                                  scale += std::abs(leg.weight);
                              }
                              return std::abs(slope) <= 1e-14 * scale;
                          },
                      },
                      value_);
}

std::optional<double> Payoff::sup_bound() const {
    if (!is_bounded()) {
        return std::nullopt;
    }
    if (const auto* p = std::get_if<Put>(&value_)) {
        return p->strike;
    }
    if (const auto* b = std::get_if<Butterfly>(&value_)) {
        return 0.5 * (b->upper - b->lower);
    }
    // Piecewise linear and flat beyond the last strike: the sup sits on a kink.
    double sup = std::abs(eval(0.0));
    for (double k : kinks()) {
        sup = std::max(sup, std::abs(eval(k)));
    }
    return sup;
}

double Payoff::max_strike() const noexcept {
    return std::visit(overloaded{
                          [](const Call& c) { return c.strike; },
                          [](const Put& p) { return p.strike; },
                          [](const Butterfly& b) { return b.upper; },
                          [](const CallCombo& c) {
                              double k = 0.0;
                              for (const auto& leg : c.legs) {
                                  k = std::max(k, leg.strike);
                              }
                              return k;
                          },
                      },
                      value_);
}

std::vector<double> Payoff::kinks() const {
    std::vector<double> ks;
    if (const auto* p = std::get_if<Put>(&value_)) {
        ks.push_back(p->strike);
        return ks;
    }
    for (const auto& leg : call_legs()) {
        if (leg.weight != 0.0) {
            ks.push_back(leg.strike);
        }
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
}

Payoff Payoff::negated() const {
    auto legs = call_legs();
    for (auto& leg : legs) {
        leg.weight = -leg.weight;
    }
    return Payoff(CallCombo{std::move(legs)});
}

std::string Payoff::describe() const {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const Call& c) { os << "call(K=" << c.strike << ")"; },
                   [&](const Put& p) { os << "put(K=" << p.strike << ")"; },
                   [&](const Butterfly& b) { os << "butterfly(K1=" << b.lower << ",K2=" << b.upper << ")"; },
                   [&](const CallCombo& c) {
                       os << "combo(";
                       for (std::size_t i = 0; i < c.legs.size(); ++i) {
                           os << (i ? "," : "") << c.legs[i].weight << "@" << c.legs[i].strike;
                       }
                       os << ")";
                   },
               },
               value_);
    return os.str();
}

}  // namespace erp
