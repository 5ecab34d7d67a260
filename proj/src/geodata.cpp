#include "psh/geodata.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "psh/errors.hpp"

namespace psh {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

double parse_number(std::string_view token, int line) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (!token.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) throw ParseError("non-numeric token '" + std::string(token) + "'", line);
    return value;
}

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
    return out;
}

}  // namespace

RasterGrid parse_ascii_grid(std::istream& in) {
    static const std::set<std::string> kKnown = {"NCOLS",     "NROWS",     "XLLCORNER",   "YLLCORNER",
                                                 "XLLCENTER", "YLLCENTER", "CELLSIZE", "NODATA_VALUE"};
    std::map<std::string, double> header;
    std::string text;
    int line_no = 0;
    std::vector<std::string_view> tokens;

    // Header lines start with a letter; the first line starting otherwise is data.
    bool pending_data = false;
    while (std::getline(in, text)) {
        ++line_no;
        tokens = tokenize(text);
        if (tokens.empty()) continue;
        if (!std::isalpha(static_cast<unsigned char>(tokens[0][0])) || upper(tokens[0]) == "NAN" ||
            upper(tokens[0]) == "INF") {
            pending_data = true;
            break;
        }
        std::string key = upper(tokens[0]);
        if (!kKnown.count(key) || tokens.size() != 2) throw ParseError("malformed header key '" + std::string(tokens[0]) + "'", line_no);
        if (header.count(key)) throw ParseError("duplicate header key '" + key + "'", line_no);
        header[key] = parse_number(tokens[1], line_no);
    }

    auto require = [&](const std::string& key) {
        auto it = header.find(key);
        if (it == header.end()) throw ParseError("missing header key " + key, line_no);
        return it->second;
    };
    double ncols_d = require("NCOLS");
    double nrows_d = require("NROWS");
    if (ncols_d < 1 || nrows_d < 1 || ncols_d != std::floor(ncols_d) || nrows_d != std::floor(nrows_d))
        throw ParseError("NCOLS and NROWS must be positive integers", line_no);
    const auto ncols = static_cast<Eigen::Index>(ncols_d);
    const auto nrows = static_cast<Eigen::Index>(nrows_d);
    double cellsize = require("CELLSIZE");
    if (!(cellsize > 0.0) || !std::isfinite(cellsize)) throw ParseError("CELLSIZE must be positive", line_no);

    double x0 = 0.0;
    double y0 = 0.0;
    if (header.count("XLLCORNER")) x0 = header["XLLCORNER"];
    else if (header.count("XLLCENTER")) x0 = header["XLLCENTER"] - 0.5 * cellsize;
    else throw ParseError("missing header key XLLCORNER", line_no);
    if (header.count("YLLCORNER")) y0 = header["YLLCORNER"];
    else if (header.count("YLLCENTER")) y0 = header["YLLCENTER"] - 0.5 * cellsize;
    else throw ParseError("missing header key YLLCORNER", line_no);
    double nodata = header.count("NODATA_VALUE") ? header["NODATA_VALUE"] : -9999.0;

    RasterGrid grid(nrows, ncols, x0, y0, cellsize, nodata, nodata);
    Eigen::Index rows_read = 0;
    auto consume = [&](const std::vector<std::string_view>& row_tokens) {
        if (rows_read == nrows) throw ParseError("more than " + std::to_string(nrows) + " data rows", line_no);
        if (static_cast<Eigen::Index>(row_tokens.size()) != ncols) throw ParseError("row length mismatch", line_no);
        const Eigen::Index row = nrows - 1 - rows_read;
        for (Eigen::Index c = 0; c < ncols; ++c) {
            double v = parse_number(row_tokens[static_cast<std::size_t>(c)], line_no);
            if (v != nodata && !std::isfinite(v)) throw ParseError("non-finite value", line_no);
            grid(row, c) = v;
        }
        ++rows_read;
    };
    if (pending_data) consume(tokens);
    while (std::getline(in, text)) {
        ++line_no;
        tokens = tokenize(text);
        if (tokens.empty()) continue;
        consume(tokens);
    }
    if (rows_read != nrows)
        throw ParseError("expected " + std::to_string(nrows) + " data rows, found " + std::to_string(rows_read), line_no);
    return grid;
}

RasterGrid parse_ascii_grid(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_ascii_grid(in);
}

RasterGrid read_ascii_grid(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LayerError("cannot open raster " + path.string());
    try {
        return parse_ascii_grid(in);
    } catch (const ParseError& e) {
        throw LayerError(path.string() + ": " + e.what());
    }
}

void write_ascii_grid(std::ostream& out, const RasterGrid& grid) {
    out << std::setprecision(17);
    out << "ncols " << grid.ncols() << '\n'
        << "nrows " << grid.nrows() << '\n'
        << "xllcorner " << grid.x_origin << '\n'
        << "yllcorner " << grid.y_origin << '\n'
        << "cellsize " << grid.cellsize << '\n'
        << "NODATA_value " << grid.nodata << '\n';
    for (Eigen::Index r = grid.nrows() - 1; r >= 0; --r) {
        for (Eigen::Index c = 0; c < grid.ncols(); ++c) {
            if (c) out << ' ';
            out << grid(r, c);
        }
        out << '\n';
    }
}

void write_ascii_grid(const std::filesystem::path& path, const RasterGrid& grid) {
    std::ofstream out(path);
    if (!out) throw LayerError("cannot write raster " + path.string());
    write_ascii_grid(out, grid);
}

std::string_view to_string(GeometryKind kind) {
    switch (kind) {
        case GeometryKind::Point: return "Point";
        case GeometryKind::Polyline: return "LineString";
        case GeometryKind::Polygon: return "Polygon";
    }
    return "?";
}

namespace {

Point parse_position(const nlohmann::json& pos) {
    if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number())
        throw LayerError("coordinate must be [x, y]");
    Point p(pos[0].get<double>(), pos[1].get<double>());
    if (!p.allFinite()) throw LayerError("non-finite coordinate");
    return p;
}

std::vector<Point> parse_positions(const nlohmann::json& arr) {
    if (!arr.is_array()) throw LayerError("coordinates must be an array");
    std::vector<Point> pts;
    pts.reserve(arr.size());
    for (const auto& pos : arr) pts.push_back(parse_position(pos));
    return pts;
}

Ring parse_ring(const nlohmann::json& arr) {
    Ring ring = parse_positions(arr);
    if (ring.size() < 2 || ring.front() != ring.back()) throw LayerError("unclosed ring");
    if (ring.size() < 4) throw LayerError("polygon ring needs at least 4 vertices");
    return ring;
}

Geometry parse_geometry(const nlohmann::json& geom, GeometryKind kind) {
    if (!geom.is_object() || !geom.contains("type") || !geom.contains("coordinates"))
        throw LayerError("feature geometry must have type and coordinates");
    const std::string type = geom.at("type").get<std::string>();
    if (type != to_string(kind))
        throw LayerError("geometry type " + type + " in a " + std::string(to_string(kind)) + " layer");
    const auto& coords = geom.at("coordinates");
    switch (kind) {
        case GeometryKind::Point: return parse_position(coords);
        case GeometryKind::Polyline: {
            Polyline line = parse_positions(coords);
            if (line.size() < 2) throw LayerError("degenerate polyline");
            return line;
        }
        case GeometryKind::Polygon: {
            if (!coords.is_array() || coords.empty()) throw LayerError("polygon without rings");
            Polygon poly;
            poly.exterior = parse_ring(coords[0]);
            for (std::size_t i = 1; i < coords.size(); ++i) poly.holes.push_back(parse_ring(coords[i]));
            return poly;
        }
    }
    throw LayerError("unsupported geometry");
}

}  // namespace

VectorLayer parse_vector_layer(const nlohmann::json& doc, GeometryKind kind) {
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" || !doc.contains("features") ||
        !doc.at("features").is_array())
        throw LayerError("document is not a FeatureCollection");
    VectorLayer layer;
    layer.kind = kind;
    std::set<long> seen;
    for (const auto& f : doc.at("features")) {
        if (!f.is_object() || f.value("type", "") != "Feature") throw LayerError("collection member is not a Feature");
        const auto props = f.value("properties", nlohmann::json::object());
        if (!props.is_object() || !props.contains("id") || !props.at("id").is_number_integer())
            throw LayerError("feature property \"id\" (integer) is required");
        Feature feature;
        feature.id = props.at("id").get<long>();
        try {
            if (!seen.insert(feature.id).second) throw LayerError("duplicate feature id " + std::to_string(feature.id));
            if (props.contains("name") && props.at("name").is_string()) feature.name = props.at("name").get<std::string>();
            feature.geometry = parse_geometry(f.value("geometry", nlohmann::json()), kind);
        } catch (const nlohmann::json::exception& e) {
            throw LayerError("feature " + std::to_string(feature.id) + ": " + e.what());
        } catch (const LayerError& e) {
            if (std::string_view(e.what()).starts_with("duplicate")) throw;
            throw LayerError(std::string(e.what()) + " (feature " + std::to_string(feature.id) + ")");
        }
        layer.features.push_back(std::move(feature));
    }
    return layer;
}

VectorLayer parse_vector_layer_text(std::string_view text, GeometryKind kind) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw LayerError(std::string("invalid JSON: ") + e.what());
    }
    return parse_vector_layer(doc, kind);
}

VectorLayer read_vector_layer(const std::filesystem::path& path, GeometryKind kind) {
    std::ifstream in(path);
    if (!in) throw LayerError("cannot open vector layer " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_vector_layer_text(buffer.str(), kind);
    } catch (const LayerError& e) {
        throw LayerError(path.string() + ": " + e.what());
    }
}

std::string format_number(double value) {
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.6g", value);
    return buf.data();
}

}  // namespace psh
