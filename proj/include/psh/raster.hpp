#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "psh/errors.hpp"

namespace psh {

using Point = Eigen::Vector2d;

struct CellIndex {
    Eigen::Index row;
    Eigen::Index col;

    friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Regular grid in a projected planar system. Row 0 is the southern-most row
/// (its lower edge sits at y_origin); columns run east from x_origin.
template <typename Scalar>
struct Raster {
    using Values = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    double x_origin = 0.0;
    double y_origin = 0.0;
    double cellsize = 1.0;
    Scalar nodata = Scalar(-9999);
    Values values;

    Raster() = default;
    Raster(Eigen::Index nrows, Eigen::Index ncols, double x0, double y0, double cell, Scalar nodata_value,
           Scalar fill)
        : x_origin(x0), y_origin(y0), cellsize(cell), nodata(nodata_value), values(Values::Constant(nrows, ncols, fill)) {}

    Eigen::Index nrows() const { return values.rows(); }
    Eigen::Index ncols() const { return values.cols(); }

    Scalar operator()(Eigen::Index row, Eigen::Index col) const { return values(row, col); }
    Scalar& operator()(Eigen::Index row, Eigen::Index col) { return values(row, col); }

    bool is_nodata(Eigen::Index row, Eigen::Index col) const { return values(row, col) == nodata; }

    double x_max() const { return x_origin + cellsize * static_cast<double>(ncols()); }
    double y_max() const { return y_origin + cellsize * static_cast<double>(nrows()); }

    Point cell_center(Eigen::Index row, Eigen::Index col) const {
        return {x_origin + (static_cast<double>(col) + 0.5) * cellsize,
                y_origin + (static_cast<double>(row) + 0.5) * cellsize};
    }

    bool contains(const Point& p) const {
        return p.x() >= x_origin && p.x() <= x_max() && p.y() >= y_origin && p.y() <= y_max();
    }

    /// Cell containing p. The extent is closed: points on the east/north edge
    /// belong to the last column/row.
    std::optional<CellIndex> locate(const Point& p) const {
        if (!contains(p)) return std::nullopt;
        auto col = static_cast<Eigen::Index>(std::floor((p.x() - x_origin) / cellsize));
        auto row = static_cast<Eigen::Index>(std::floor((p.y() - y_origin) / cellsize));
        col = std::min(col, ncols() - 1);
        row = std::min(row, nrows() - 1);
        return CellIndex{row, col};
    }

    bool same_geometry(const Raster<Scalar>& other) const {
        return nrows() == other.nrows() && ncols() == other.ncols() && x_origin == other.x_origin &&
               y_origin == other.y_origin && cellsize == other.cellsize;
    }

    Eigen::Index usable_cells() const { return (values != nodata).count(); }
};

using RasterGrid = Raster<double>;

/// Checks the grid invariants; throws LayerError naming `what`.
template <typename Scalar>
void validate(const Raster<Scalar>& grid, const std::string& what = "raster") {
    if (grid.nrows() < 1 || grid.ncols() < 1) throw LayerError(what + ": empty grid");
    if (!(grid.cellsize > 0.0) || !std::isfinite(grid.cellsize)) throw LayerError(what + ": cellsize must be positive");
    for (Eigen::Index r = 0; r < grid.nrows(); ++r)
        for (Eigen::Index c = 0; c < grid.ncols(); ++c)
            if (!grid.is_nodata(r, c) && !std::isfinite(static_cast<double>(grid(r, c))))
                throw LayerError(what + ": non-finite value at row " + std::to_string(r));
}

}  // namespace psh
