#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "psh/geometry.hpp"
#include "psh/raster.hpp"

namespace psh {

// ESRI ASCII grid ------------------------------------------------------------

/// Parses an ESRI ASCII grid. Header keys are case-insensitive; the first
/// data line is the northern-most row and lands at the highest row index.
/// Throws ParseError with the offending line number.
RasterGrid parse_ascii_grid(std::istream& in);
RasterGrid parse_ascii_grid(std::string_view text);
RasterGrid read_ascii_grid(const std::filesystem::path& path);

/// Writes with 17 significant digits so finite values round-trip exactly.
void write_ascii_grid(std::ostream& out, const RasterGrid& grid);
void write_ascii_grid(const std::filesystem::path& path, const RasterGrid& grid);

// Feature collections ----------------------------------------------------------

enum class GeometryKind { Point, Polyline, Polygon };

std::string_view to_string(GeometryKind kind);

using Geometry = std::variant<Point, Polyline, Polygon>;

struct Feature {
    long id = 0;
    std::optional<std::string> name;
    Geometry geometry;
};

struct VectorLayer {
    GeometryKind kind = GeometryKind::Point;
    std::vector<Feature> features;

    bool empty() const { return features.empty(); }
};

/// Parses a GeoJSON-style FeatureCollection whose geometries are all of
/// `kind` (Point, LineString or Polygon). Throws LayerError on mixed types,
/// unclosed rings, degenerate polylines and duplicate ids.
VectorLayer parse_vector_layer(const nlohmann::json& doc, GeometryKind kind);
VectorLayer parse_vector_layer_text(std::string_view text, GeometryKind kind);
VectorLayer read_vector_layer(const std::filesystem::path& path, GeometryKind kind);

template <typename G>
std::vector<G> geometries(const VectorLayer& layer) {
    std::vector<G> out;
    out.reserve(layer.features.size());
    for (const auto& f : layer.features) out.push_back(std::get<G>(f.geometry));
    return out;
}

/// Formats with six significant digits (printf %.6g).
std::string format_number(double value);

}  // namespace psh
