#include "erp/hjb/surface_io.hpp"

#include <cstdio>
#include <ostream>

namespace erp::hjb {

void write_surface_csv(std::ostream& os, std::span<const ValueSurface> surfaces) {
    os << "tau,S,v,F,phi\n";
    char line[160];
    for (const auto& s : surfaces) {
        for (std::size_t i = 0; i < s.grid.N1; ++i) {
            for (std::size_t j = 0; j < s.grid.N2; ++j) {
                std::snprintf(line, sizeof line, "%.10g,%.10g,%.10g,%.10g,%.10g\n", s.tau, s.grid.S(i), s.grid.v(j),
                              s.at(i, j), s.control(i, j));
                os << line;
            }
        }
    }
}

}  // namespace erp::hjb
