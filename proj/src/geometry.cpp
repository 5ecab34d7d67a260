#include "psh/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace psh {

namespace {

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

bool crosses_ray(const Ring& ring, const Point& p) {
    bool inside = false;
    for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
        const Point& a = ring[i];
        const Point& b = ring[j];
        if ((a.y() > p.y()) != (b.y() > p.y())) {
            double x_at = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
            if (p.x() < x_at) inside = !inside;
        }
    }
    return inside;
}

bool on_ring(const Ring& ring, const Point& p) {
    for (std::size_t i = 0; i + 1 < ring.size(); ++i)
        if (on_segment(p, ring[i], ring[i + 1])) return true;
    return false;
}

}  // namespace

double signed_area(const Ring& ring) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) sum += cross(ring[i], ring[i + 1]);
    return 0.5 * sum;
}

double area(const Polygon& poly) {
    double a = std::abs(signed_area(poly.exterior));
    for (const auto& hole : poly.holes) a -= std::abs(signed_area(hole));
    return a;
}

Point centroid(const Polygon& poly) {
    // Accumulate each ring with the sign that makes the exterior positive and
    // holes negative, independent of the input winding.
    Point moment = Point::Zero();
    double total = 0.0;
    auto accumulate = [&](const Ring& ring, double sign) {
        double ring_area = signed_area(ring);
        if (ring_area == 0.0) return;
        double orient = ring_area > 0 ? sign : -sign;
        Point m = Point::Zero();
        for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
            double c = cross(ring[i], ring[i + 1]);
            m += (ring[i] + ring[i + 1]) * c;
        }
        moment += orient * m / 6.0;
        total += orient * ring_area;
    };
    accumulate(poly.exterior, 1.0);
    for (const auto& hole : poly.holes) accumulate(hole, -1.0);
    return moment / total;
}

BoundingBox bounds(const Ring& ring) {
    Point lo = Point::Constant(std::numeric_limits<double>::infinity());
    Point hi = -lo;
    for (const auto& p : ring) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    return {lo, hi};
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
    const Point ab = b - a;
    const Point ap = p - a;
    double scale = std::max({ab.cwiseAbs().maxCoeff(), ap.cwiseAbs().maxCoeff(), 1.0});
    if (std::abs(cross(ab, ap)) > 1e-12 * scale * scale) return false;
    return p.x() >= std::min(a.x(), b.x()) && p.x() <= std::max(a.x(), b.x()) && p.y() >= std::min(a.y(), b.y()) &&
           p.y() <= std::max(a.y(), b.y());
}

bool contains(const Polygon& poly, const Point& p, bool boundary_inside) {
    if (boundary_inside) {
        if (on_ring(poly.exterior, p)) return true;
        for (const auto& hole : poly.holes)
            if (on_ring(hole, p)) return true;
    }
    bool inside = crosses_ray(poly.exterior, p);
    for (const auto& hole : poly.holes)
        if (crosses_ray(hole, p)) inside = !inside;
    return inside;
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
    const Point ab = b - a;
    double len2 = ab.squaredNorm();
    if (len2 == 0.0) return (p - a).norm();
    double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

double length(const Polyline& line) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < line.size(); ++i) total += (line[i + 1] - line[i]).norm();
    return total;
}

Point interpolate(const Polyline& line, double chainage) {
    double walked = 0.0;
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
        double seg = (line[i + 1] - line[i]).norm();
        if (seg > 0.0 && walked + seg >= chainage) {
            double t = std::clamp((chainage - walked) / seg, 0.0, 1.0);
            return line[i] + t * (line[i + 1] - line[i]);
        }
        walked += seg;
    }
    return line.back();
}

}  // namespace psh
