#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Core>

#include "psh/config.hpp"
#include "psh/errors.hpp"
#include "psh/geometry.hpp"
#include "psh/raster.hpp"

namespace psh {

enum class CandidateKind { Lake, FlatLand, RiverPoint };

std::string_view to_string(CandidateKind kind);

struct ReservoirCandidate {
    long id = 0;
    CandidateKind kind = CandidateKind::Lake;
    Point centroid = Point::Zero();
    std::optional<double> surface_area_m2;  // absent for river points
    double elevation_m = 0.0;
};

/// A candidate dropped during construction, with a machine-readable reason.
struct Discard {
    std::string layer;
    long id = 0;
    std::string reason;
    std::string detail;
};

/// NODATA value written into slope rasters; slope itself is never negative.
inline constexpr double kSlopeNodata = -9999.0;

/// Percent slope with the Horn 3x3 weighted-difference kernel. Border cells
/// and cells whose 3x3 window touches NODATA are NODATA (kSlopeNodata).
/// Rows are split into contiguous blocks across `workers` threads; each
/// block evaluates the same per-cell expression, so the output does not
/// depend on the worker count.
template <typename Scalar>
Raster<Scalar> compute_slope(const Raster<Scalar>& dem, unsigned workers = 1) {
    if (dem.nrows() < 3 || dem.ncols() < 3) throw DomainError("grid too small for slope");
    if (!(dem.cellsize > 0.0)) throw DomainError("cellsize must be positive");

    Raster<Scalar> slope(dem.nrows(), dem.ncols(), dem.x_origin, dem.y_origin, dem.cellsize, Scalar(kSlopeNodata),
                         Scalar(kSlopeNodata));
    const Eigen::Index inner_rows = dem.nrows() - 2;
    const Eigen::Index inner_cols = dem.ncols() - 2;
    const Scalar scale = Scalar(100) / (Scalar(8) * static_cast<Scalar>(dem.cellsize));

    auto run_block = [&](Eigen::Index first, Eigen::Index count) {
        if (count <= 0) return;
        const auto& z = dem.values;
        auto window = [&](int dr, int dc) { return z.block(first + dr, 1 + dc, count, inner_cols); };

        // Row index grows northward, so +1 rows are the northern neighbours.
        auto ddx = (window(1, 1) + Scalar(2) * window(0, 1) + window(-1, 1)) -
                   (window(1, -1) + Scalar(2) * window(0, -1) + window(-1, -1));
        auto ddy = (window(1, -1) + Scalar(2) * window(1, 0) + window(1, 1)) -
                   (window(-1, -1) + Scalar(2) * window(-1, 0) + window(-1, 1));
        Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> pct =
            scale * (ddx.square() + ddy.square()).sqrt();

        Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> missing =
            Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>::Constant(count, inner_cols, false);
        for (int dr = -1; dr <= 1; ++dr)
            for (int dc = -1; dc <= 1; ++dc) missing = missing || (window(dr, dc) == dem.nodata);

        slope.values.block(first, 1, count, inner_cols) = missing.select(Scalar(kSlopeNodata), pct);
    };

    const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(inner_rows)));
    if (n == 1) {
        run_block(1, inner_rows);
        return slope;
    }
    std::vector<std::jthread> pool;
    const Eigen::Index per = (inner_rows + n - 1) / n;
    for (unsigned t = 0; t < n; ++t) {
        Eigen::Index first = 1 + static_cast<Eigen::Index>(t) * per;
        Eigen::Index count = std::min(per, 1 + inner_rows - first);
        pool.emplace_back(run_block, first, count);
    }
    pool.clear();
    return slope;
}

/// Connected (8-neighbour) regions with slope below the threshold and
/// elevation at or below the cap; one FlatLand candidate per region whose
/// area reaches min_area_m2. Ids are 1-based in row-major order of each
/// region's first cell (row 0 = south).
std::vector<ReservoirCandidate> extract_flatlands(const RasterGrid& slope, const RasterGrid& dem, const SchemeConfig& cfg,
                                                  std::vector<Discard>* discards = nullptr);

/// Value of the cell containing p (nearest cell, no interpolation).
double sample_elevation(const RasterGrid& dem, const Point& p);

/// Mean DEM value over cell centres inside the polygon (even-odd). A polygon
/// that covers no cell centre takes the cell under its area centroid.
double mean_polygon_elevation(const RasterGrid& dem, const Polygon& poly);

}  // namespace psh
