#include "psh/screening.hpp"

#include <algorithm>
#include <limits>

namespace psh {

ScreeningContext ScreeningContext::from_layers(const VectorLayer* roads, const VectorLayer* planned,
                                               const VectorLayer* operational, const VectorLayer* protected_areas) {
    ScreeningContext ctx;
    if (roads) ctx.roads = geometries<Polyline>(*roads);
    if (planned) ctx.planned_substations = geometries<Point>(*planned);
    if (operational) ctx.operational_substations = geometries<Point>(*operational);
    if (protected_areas) ctx.protected_areas = geometries<Polygon>(*protected_areas);
    return ctx;
}

double distance_to_polylines(const Point& p, const std::vector<Polyline>& lines) {
    if (lines.empty()) throw DomainError("empty polyline layer");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& line : lines)
        for (std::size_t i = 0; i + 1 < line.size(); ++i) best = std::min(best, point_segment_distance(p, line[i], line[i + 1]));
    return best;
}

double distance_to_points(const Point& p, const std::vector<Point>& points) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : points) best = std::min(best, (q - p).norm());
    return best;
}

bool point_in_protected_area(const Point& p, const std::vector<Polygon>& areas) {
    return std::any_of(areas.begin(), areas.end(), [&](const Polygon& poly) { return contains(poly, p, true); });
}

Tier classify_tier(const PshSite& site, const ScreeningContext& ctx, const SchemeConfig& cfg) {
    if (!site.has_technical() || ctx.roads.empty()) return Tier::Theoretical;
    const Point ref = site.reference_point();
    const double buffer = cfg.infra_buffer_m;
    if (distance_to_polylines(ref, ctx.roads) > buffer) return Tier::Theoretical;

    const double operational = distance_to_points(ref, ctx.operational_substations);
    const double grid = std::min(distance_to_points(ref, ctx.planned_substations), operational);
    if (grid > buffer) return Tier::Theoretical;

    if (point_in_protected_area(ref, ctx.protected_areas) || operational > buffer) return Tier::Technical;
    return Tier::Exploitable;
}

}  // namespace psh
