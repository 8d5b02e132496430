#include "erp/risk.hpp"

#include <cmath>

namespace erp {

double RiskFunction::eval(double x) const noexcept {
    if (kind_ == Kind::PositivePart) {
        return x > 0.0 ? x : 0.0;
    }
    return std::expm1(x);
}

double RiskFunction::right_derivative(double x) const noexcept {
    if (kind_ == Kind::PositivePart) {
        return x >= 0.0 ? 1.0 : 0.0;
    }
    return std::exp(x);
}

}  // namespace erp
