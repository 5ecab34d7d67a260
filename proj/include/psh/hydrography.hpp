#pragma once

#include <vector>

#include "psh/config.hpp"
#include "psh/geodata.hpp"
#include "psh/terrain.hpp"

namespace psh {

/// One Lake candidate per polygon whose shoelace area reaches min_area_m2 and
/// whose mean elevation does not exceed the cap. Candidate id = feature id;
/// output sorted by id. Throws LayerError on a zero-area polygon.
std::vector<ReservoirCandidate> lake_candidates(const VectorLayer& lakes, const RasterGrid& dem, const SchemeConfig& cfg,
                                                std::vector<Discard>* discards = nullptr);

/// River points every river_interval_m of arc length from each polyline's
/// first vertex. Points off the DEM, on NODATA or above the cap are dropped;
/// surviving points are numbered 1.. in (feature id, chainage) order.
std::vector<ReservoirCandidate> densify_river_points(const VectorLayer& rivers, const RasterGrid& dem,
                                                     const SchemeConfig& cfg, std::vector<Discard>* discards = nullptr);

/// Arc-length positions of the marks along one polyline (0, interval, ...).
std::vector<double> chainages(const Polyline& line, double interval);

}  // namespace psh
