#include "erp/market.hpp"

#include <cmath>
#include <string>

#include "erp/error.hpp"

namespace erp {

void MarketParams::validate(bool allow_zero_vol) const {
    if (!std::isfinite(mu) || !std::isfinite(r) || !std::isfinite(sigma) || !std::isfinite(T)) {
        throw ConfigError("market parameters must be finite");
    }
    if (sigma < 0.0 || (sigma == 0.0 && !allow_zero_vol)) {
        throw ConfigError("sigma must be positive, got " + std::to_string(sigma));
    }
    if (T <= 0.0) {
        throw ConfigError("horizon T must be positive, got " + std::to_string(T));
    }
}

}  // namespace erp
