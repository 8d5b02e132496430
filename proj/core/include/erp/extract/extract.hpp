#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "erp/hjb/grid.hpp"

namespace erp::extract {

/// Outcome of locating the seller/buyer crossing on one S row.
///   Ok            - crossing strictly inside the v grid.
///   Saturated     - seller exceeds buyer up to +v_max; v_max is too small.
///   EmptyCrossing - seller never exceeds buyer; reported at -v_max.
enum class Crossing { Ok, Saturated, EmptyCrossing };

[[nodiscard]] const char* to_string(Crossing c) noexcept;

/// How the price is read off a row once the crossing is bracketed.
///   GridNode - the largest grid price where seller > buyer (no sub-grid
///              resolution; error up to one dv).
///   Linear   - root of the linear interpolant of seller - buyer between
///              that node and the next one.
enum class CrossingRule { GridNode, Linear };

struct NodePrice {
    double v = 0.0;
    Crossing flag = Crossing::Ok;
};

/// Largest grid price v_j at which the seller risk strictly exceeds the
/// buyer risk on row i. Ties count for the buyer. Both surfaces must live
/// on the same grid; throws DomainError otherwise or if i is out of range.
/// With CrossingRule::Linear an Ok row is refined inside [v_j, v_{j+1}].
[[nodiscard]] NodePrice extract_at_node(const hjb::ValueSurface& seller, const hjb::ValueSurface& buyer,
                                        std::size_t i, CrossingRule rule = CrossingRule::GridNode);

struct CurvePoint {
    double S = 0.0;
    double v = 0.0;
    Crossing flag = Crossing::Ok;  ///< worst flag of the nodes used
};

struct ErpCurve {
    hjb::GridSpec grid;
    std::string problem;  ///< e.g. "call(K=5) exp mu=0.05"
    std::vector<CurvePoint> points;
};

/// Equal-risk curve at the query spots. A query on a node returns that
/// node's price; between nodes S_i < S < S_{i+1} it returns the average of
/// the two nodal prices. Queries must be strictly increasing and inside
/// (0, S_max), else DomainError.
[[nodiscard]] ErpCurve extract_curve(const hjb::ValueSurface& seller, const hjb::ValueSurface& buyer,
                                     std::span<const double> S_query, std::string problem = {},
                                     CrossingRule rule = CrossingRule::GridNode);

/// n spots evenly spaced strictly inside (0, S_max): S_max * k / (n + 1).
[[nodiscard]] std::vector<double> uniform_spots(double S_max, std::size_t n = 101);

}  // namespace erp::extract
