#include "psh/terrain.hpp"

#include <deque>

namespace psh {

std::string_view to_string(CandidateKind kind) {
    switch (kind) {
        case CandidateKind::Lake: return "Lake";
        case CandidateKind::FlatLand: return "FlatLand";
        case CandidateKind::RiverPoint: return "RiverPoint";
    }
    return "?";
}

std::vector<ReservoirCandidate> extract_flatlands(const RasterGrid& slope, const RasterGrid& dem, const SchemeConfig& cfg,
                                                  std::vector<Discard>* discards) {
    if (!slope.same_geometry(dem)) throw DomainError("slope and DEM are not co-registered");

    const Eigen::Index rows = dem.nrows();
    const Eigen::Index cols = dem.ncols();
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> flat =
        (slope.values != slope.nodata) && (slope.values < cfg.slope_threshold_pct) && (dem.values != dem.nodata) &&
        (dem.values <= cfg.elevation_cap_m);

    Eigen::Array<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> label =
        Eigen::Array<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>::Zero(rows, cols);
    int next = 0;
    std::deque<CellIndex> queue;
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (!flat(r, c) || label(r, c)) continue;
            label(r, c) = ++next;
            queue.push_back({r, c});
            while (!queue.empty()) {
                auto [cr, cc] = queue.front();
                queue.pop_front();
                for (Eigen::Index dr = -1; dr <= 1; ++dr) {
                    for (Eigen::Index dc = -1; dc <= 1; ++dc) {
                        Eigen::Index nr = cr + dr;
                        Eigen::Index nc = cc + dc;
                        if (nr < 0 || nc < 0 || nr >= rows || nc >= cols) continue;
                        if (!flat(nr, nc) || label(nr, nc)) continue;
                        label(nr, nc) = next;
                        queue.push_back({nr, nc});
                    }
                }
            }
        }
    }

    // Accumulate in row-major order so sums do not depend on traversal order.
    struct Accum {
        long cells = 0;
        double elev = 0.0;
        double x = 0.0;
        double y = 0.0;
    };
    std::vector<Accum> acc(static_cast<std::size_t>(next) + 1);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            int l = label(r, c);
            if (!l) continue;
            auto& a = acc[static_cast<std::size_t>(l)];
            const Point center = dem.cell_center(r, c);
            ++a.cells;
            a.elev += dem(r, c);
            a.x += center.x();
            a.y += center.y();
        }
    }

    const double cell_area = dem.cellsize * dem.cellsize;
    std::vector<ReservoirCandidate> out;
    long id = 0;
    for (int l = 1; l <= next; ++l) {
        const auto& a = acc[static_cast<std::size_t>(l)];
        const double component_area = static_cast<double>(a.cells) * cell_area;
        if (component_area < cfg.min_area_m2) {
            if (discards)
                discards->push_back({"flatlands", l, "area", "area_m2=" + std::to_string(component_area)});
            continue;
        }
        ReservoirCandidate cand;
        cand.id = ++id;
        cand.kind = CandidateKind::FlatLand;
        const double n = static_cast<double>(a.cells);
        cand.centroid = Point(a.x / n, a.y / n);
        cand.surface_area_m2 = component_area;
        cand.elevation_m = a.elev / n;
        out.push_back(cand);
    }
    return out;
}

double sample_elevation(const RasterGrid& dem, const Point& p) {
    auto cell = dem.locate(p);
    if (!cell) throw DomainError("outside DEM");
    if (dem.is_nodata(cell->row, cell->col)) throw DomainError("NODATA cell");
    return dem(cell->row, cell->col);
}

double mean_polygon_elevation(const RasterGrid& dem, const Polygon& poly) {
    const BoundingBox box = bounds(poly.exterior);
    auto clamp_index = [](double v, Eigen::Index hi) {
        return std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::floor(v)), 0, hi - 1);
    };
    const Eigen::Index c0 = clamp_index((box.min.x() - dem.x_origin) / dem.cellsize, dem.ncols());
    const Eigen::Index c1 = clamp_index((box.max.x() - dem.x_origin) / dem.cellsize, dem.ncols());
    const Eigen::Index r0 = clamp_index((box.min.y() - dem.y_origin) / dem.cellsize, dem.nrows());
    const Eigen::Index r1 = clamp_index((box.max.y() - dem.y_origin) / dem.cellsize, dem.nrows());

    double sum = 0.0;
    long covered = 0;
    long usable = 0;
    for (Eigen::Index r = r0; r <= r1; ++r) {
        for (Eigen::Index c = c0; c <= c1; ++c) {
            if (!contains(poly, dem.cell_center(r, c), false)) continue;
            ++covered;
            if (dem.is_nodata(r, c)) continue;
            ++usable;
            sum += dem(r, c);
        }
    }
    if (usable > 0) return sum / static_cast<double>(usable);
    if (covered > 0) throw DomainError("polygon covers only NODATA cells");
    try {
        return sample_elevation(dem, centroid(poly));
    } catch (const DomainError&) {
        throw DomainError("polygon covers no DEM cell");
    }
}

}  // namespace psh
