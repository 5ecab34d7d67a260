#pragma once

#include <vector>

#include "psh/config.hpp"
#include "psh/geodata.hpp"
#include "psh/siting.hpp"

namespace psh {

/// Infrastructure and environmental layers used for tier classification.
/// Technical proximity accepts planned or operational substations;
/// exploitable proximity accepts operational ones only.
struct ScreeningContext {
    std::vector<Polyline> roads;
    std::vector<Point> planned_substations;
    std::vector<Point> operational_substations;
    std::vector<Polygon> protected_areas;

    static ScreeningContext from_layers(const VectorLayer* roads, const VectorLayer* planned,
                                        const VectorLayer* operational, const VectorLayer* protected_areas);
};

/// Minimum point-to-segment distance over every segment. Throws DomainError
/// on an empty layer.
double distance_to_polylines(const Point& p, const std::vector<Polyline>& lines);

/// Minimum distance to any point; +inf for an empty set.
double distance_to_points(const Point& p, const std::vector<Point>& points);

/// Even-odd containment; boundary points count as inside.
bool point_in_protected_area(const Point& p, const std::vector<Polygon>& areas);

/// Tier of a selected site at its reference point. Buffers are inclusive
/// (distance <= infra_buffer_m).
Tier classify_tier(const PshSite& site, const ScreeningContext& ctx, const SchemeConfig& cfg);

}  // namespace psh
