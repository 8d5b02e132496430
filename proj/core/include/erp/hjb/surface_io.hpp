#pragma once

#include <iosfwd>
#include <span>

#include "erp/hjb/grid.hpp"

namespace erp::hjb {

/// CSV dump with header "tau,S,v,F,phi": one row per node, surfaces in the
/// given (tau) order, then S index, then v index.
void write_surface_csv(std::ostream& os, std::span<const ValueSurface> surfaces);

}  // namespace erp::hjb
