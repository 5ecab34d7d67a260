#include "psh/hydrography.hpp"

#include <algorithm>
#include <cmath>

namespace psh {

std::vector<ReservoirCandidate> lake_candidates(const VectorLayer& lakes, const RasterGrid& dem, const SchemeConfig& cfg,
                                                std::vector<Discard>* discards) {
    auto drop = [&](long id, const char* reason, std::string detail) {
        if (discards) discards->push_back({"lakes", id, reason, std::move(detail)});
    };

    std::vector<ReservoirCandidate> out;
    for (const auto& feature : lakes.features) {
        const auto& poly = std::get<Polygon>(feature.geometry);
        const double a = area(poly);
        if (!(a > 0.0)) throw LayerError("lake " + std::to_string(feature.id) + ": polygon with zero area");
        if (a < cfg.min_area_m2) {
            drop(feature.id, "area", "area_m2=" + format_number(a));
            continue;
        }
        const Point c = centroid(poly);
        if (!dem.contains(c)) {
            drop(feature.id, "extent", "centroid outside DEM");
            continue;
        }
        double elev = 0.0;
        try {
            elev = mean_polygon_elevation(dem, poly);
        } catch (const DomainError& e) {
            drop(feature.id, "nodata", e.what());
            continue;
        }
        if (elev > cfg.elevation_cap_m) {
            drop(feature.id, "elevation", "elevation_m=" + format_number(elev));
            continue;
        }
        out.push_back({feature.id, CandidateKind::Lake, c, a, elev});
    }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.id < r.id; });
    return out;
}

std::vector<double> chainages(const Polyline& line, double interval) {
    const double total = length(line);
    // Slack keeps a nominal multiple of the interval whose float length falls short by rounding.
    const auto marks = static_cast<long>(std::floor(total / interval + 1e-9));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(marks) + 1);
    for (long k = 0; k <= marks; ++k) out.push_back(static_cast<double>(k) * interval);
    return out;
}

namespace {

// Positions for ascending chainages in one pass over the segments.
std::vector<Point> positions(const Polyline& line, const std::vector<double>& marks) {
    std::vector<Point> out;
    out.reserve(marks.size());
    std::size_t seg = 0;
    double walked = 0.0;
    for (double s : marks) {
        while (seg + 1 < line.size() - 1 && walked + (line[seg + 1] - line[seg]).norm() < s) {
            walked += (line[seg + 1] - line[seg]).norm();
            ++seg;
        }
        const Point a = line[seg];
        const Point b = line[seg + 1];
        const double len = (b - a).norm();
        const double t = len > 0.0 ? std::clamp((s - walked) / len, 0.0, 1.0) : 0.0;
        out.push_back(a + t * (b - a));
    }
    return out;
}

}  // namespace

std::vector<ReservoirCandidate> densify_river_points(const VectorLayer& rivers, const RasterGrid& dem,
                                                     const SchemeConfig& cfg, std::vector<Discard>* discards) {
    std::vector<const Feature*> ordered;
    for (const auto& f : rivers.features) ordered.push_back(&f);
    std::sort(ordered.begin(), ordered.end(), [](const Feature* a, const Feature* b) { return a->id < b->id; });

    std::vector<ReservoirCandidate> out;
    long next_id = 0;
    for (const Feature* f : ordered) {
        const auto& line = std::get<Polyline>(f->geometry);
        const auto marks = chainages(line, cfg.river_interval_m);
        const auto pts = positions(line, marks);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const std::string where = "chainage_m=" + format_number(marks[i]);
            double elev = 0.0;
            try {
                elev = sample_elevation(dem, pts[i]);
            } catch (const DomainError&) {
                if (discards) discards->push_back({"rivers", f->id, dem.contains(pts[i]) ? "nodata" : "extent", where});
                continue;
            }
            if (elev > cfg.elevation_cap_m) {
                if (discards) discards->push_back({"rivers", f->id, "elevation", where});
                continue;
            }
            out.push_back({++next_id, CandidateKind::RiverPoint, pts[i], std::nullopt, elev});
        }
    }
    return out;
}

}  // namespace psh
