#pragma once

#include <vector>

#include <Eigen/Core>

#include "psh/raster.hpp"

namespace psh {

/// Closed ring, first vertex repeated as the last one.
using Ring = std::vector<Point>;

struct Polygon {
    Ring exterior;
    std::vector<Ring> holes;
};

using Polyline = std::vector<Point>;

struct BoundingBox {
    Point min;
    Point max;
};

/// Signed shoelace area; positive for counter-clockwise rings.
double signed_area(const Ring& ring);

/// Planar area with holes subtracted.
double area(const Polygon& poly);

/// Area-weighted centroid. Requires non-zero area.
Point centroid(const Polygon& poly);

BoundingBox bounds(const Ring& ring);

/// Even-odd containment over all rings. Points on an edge or vertex count as
/// inside when `boundary_inside` is set; otherwise the ray-crossing parity
/// decides.
bool contains(const Polygon& poly, const Point& p, bool boundary_inside = true);

bool on_segment(const Point& p, const Point& a, const Point& b);

double point_segment_distance(const Point& p, const Point& a, const Point& b);

double length(const Polyline& line);

/// Point at arc length `chainage` measured from the first vertex; clamps to
/// the terminal vertex.
Point interpolate(const Polyline& line, double chainage);

}  // namespace psh
