#include <random>

#include <gtest/gtest.h>

#include "psh/terrain.hpp"

using namespace psh;

namespace {

RasterGrid plane(Eigen::Index n, double cell, double a, double b, double c = 100.0) {
    RasterGrid g(n, n, 0.0, 0.0, cell, -9999.0, 0.0);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index col = 0; col < n; ++col) {
            const Point p = g.cell_center(r, col);
            g(r, col) = c + a * p.x() + b * p.y();
        }
    return g;
}

// Interior cells only; borders are always NODATA.
template <typename F>
void for_interior(const RasterGrid& g, F f) {
    for (Eigen::Index r = 1; r + 1 < g.nrows(); ++r)
        for (Eigen::Index c = 1; c + 1 < g.ncols(); ++c) f(r, c);
}

}  // namespace

TEST(Slope, ConstantDemIsZero) {
    const RasterGrid dem(6, 6, 0, 0, 30, -9999, 812.0);
    const auto s = compute_slope(dem);
    for_interior(s, [&](auto r, auto c) { EXPECT_EQ(s(r, c), 0.0); });
    EXPECT_EQ(s(0, 0), kSlopeNodata);
    EXPECT_EQ(s(5, 3), kSlopeNodata);
}

TEST(Slope, InclinedPlane) {
    const auto s = compute_slope(plane(7, 90.0, 0.05, 0.0));
    for_interior(s, [&](auto r, auto c) { EXPECT_NEAR(s(r, c), 5.0, 1e-6); });
    const auto t = compute_slope(plane(7, 90.0, 0.03, 0.04));
    for_interior(t, [&](auto r, auto c) { EXPECT_NEAR(t(r, c), 5.0, 1e-6); });
}

TEST(Slope, RejectsGridSmallerThanKernel) {
    const RasterGrid dem(2, 5, 0, 0, 30, -9999, 1.0);
    EXPECT_THROW(compute_slope(dem), DomainError);
}

TEST(Slope, NodataNeighbourMakesNodata) {
    RasterGrid dem(5, 5, 0, 0, 30, -9999, 10.0);
    dem(2, 2) = -9999;
    const auto s = compute_slope(dem);
    for_interior(s, [&](auto r, auto c) { EXPECT_EQ(s(r, c), kSlopeNodata); });
}

TEST(Slope, ShiftInvariance) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> z(0.0, 2000.0);
    for (int trial = 0; trial < 100; ++trial) {
        RasterGrid dem(9, 11, 0, 0, 30, -9999, 0.0);
        for (auto& v : dem.values.reshaped()) v = z(rng);
        RasterGrid shifted = dem;
        shifted.values += 1234.5;
        const auto a = compute_slope(dem);
        const auto b = compute_slope(shifted);
        for_interior(a, [&](auto r, auto c) {
            EXPECT_NEAR(a(r, c), b(r, c), 1e-9 * std::max(1.0, a(r, c)));
            EXPECT_GE(a(r, c), 0.0);
        });
    }
}

TEST(Slope, WorkerCountDoesNotChangeOutput) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> z(0.0, 2000.0);
    RasterGrid dem(61, 47, 0, 0, 30, -9999, 0.0);
    for (auto& v : dem.values.reshaped()) v = z(rng);
    dem(10, 10) = -9999;
    const auto one = compute_slope(dem, 1);
    for (unsigned w : {2u, 3u, 7u, 64u}) EXPECT_TRUE((compute_slope(dem, w).values == one.values).all()) << w;
}

TEST(Flatlands, TenByTenPatch) {
    RasterGrid slope(14, 14, 0, 0, 90, kSlopeNodata, 20.0);
    slope.values.block(2, 2, 10, 10) = 1.0;
    const RasterGrid dem(14, 14, 0, 0, 90, -9999, 400.0);
    const auto flats = extract_flatlands(slope, dem, SchemeConfig{});
    ASSERT_EQ(flats.size(), 1u);
    EXPECT_EQ(flats[0].id, 1);
    EXPECT_DOUBLE_EQ(*flats[0].surface_area_m2, 810000.0);
    EXPECT_DOUBLE_EQ(flats[0].elevation_m, 400.0);
    EXPECT_EQ(flats[0].centroid, Point(630, 630));
}

TEST(Flatlands, SmallPatchDiscarded) {
    RasterGrid slope(10, 10, 0, 0, 90, kSlopeNodata, 20.0);
    for (int i = 0; i < 5; ++i) slope(3, 2 + i) = 0.0;  // 5 cells = 40,500 m2
    const RasterGrid dem(10, 10, 0, 0, 90, -9999, 400.0);
    std::vector<Discard> discards;
    EXPECT_TRUE(extract_flatlands(slope, dem, SchemeConfig{}, &discards).empty());
    ASSERT_EQ(discards.size(), 1u);
    EXPECT_EQ(discards[0].reason, "area");
}

TEST(Flatlands, DiagonalContactJoinsRegions) {
    RasterGrid slope(20, 20, 0, 0, 90, kSlopeNodata, 20.0);
    slope.values.block(2, 2, 4, 4) = 0.0;
    slope.values.block(6, 6, 4, 4) = 0.0;  // touches the first block at one corner
    const RasterGrid dem(20, 20, 0, 0, 90, -9999, 400.0);
    const auto flats = extract_flatlands(slope, dem, SchemeConfig{});
    ASSERT_EQ(flats.size(), 1u);
    EXPECT_DOUBLE_EQ(*flats[0].surface_area_m2, 32 * 8100.0);
}

TEST(Flatlands, ThresholdIsStrictAndElevationCapped) {
    RasterGrid slope(20, 20, 0, 0, 90, kSlopeNodata, 20.0);
    slope.values.block(2, 2, 8, 8) = 5.0;  // not below the threshold
    slope.values.block(12, 12, 8, 8) = 1.0;
    RasterGrid dem(20, 20, 0, 0, 90, -9999, 400.0);
    dem.values.block(12, 12, 8, 8) = 5000.5;
    EXPECT_TRUE(extract_flatlands(slope, dem, SchemeConfig{}).empty());
}

TEST(Flatlands, PartitionIsConsistent) {
    std::mt19937_64 rng(17);
    std::bernoulli_distribution flat(0.55);
    for (int trial = 0; trial < 50; ++trial) {
        RasterGrid slope(40, 40, 0, 0, 90, kSlopeNodata, 20.0);
        for (auto& v : slope.values.reshaped()) v = flat(rng) ? 1.0 : 9.0;
        const RasterGrid dem(40, 40, 0, 0, 90, -9999, 100.0);
        SchemeConfig cfg;
        cfg.min_area_m2 = 8100.0;  // every region qualifies
        const auto flats = extract_flatlands(slope, dem, cfg);
        double total = 0.0;
        for (std::size_t i = 0; i < flats.size(); ++i) {
            EXPECT_EQ(flats[i].id, static_cast<long>(i) + 1);
            total += *flats[i].surface_area_m2;
        }
        EXPECT_DOUBLE_EQ(total, static_cast<double>((slope.values < 5.0).count()) * 8100.0);
    }
}

TEST(Sampling, CellLookup) {
    RasterGrid dem(2, 2, 0, 0, 10, -9999, 0.0);
    dem(0, 0) = 1;
    dem(0, 1) = 2;
    dem(1, 0) = 3;
    dem(1, 1) = -9999;
    EXPECT_EQ(sample_elevation(dem, Point(5, 5)), 1.0);
    EXPECT_EQ(sample_elevation(dem, Point(10, 0)), 2.0);
    EXPECT_EQ(sample_elevation(dem, Point(0, 20)), 3.0);
    EXPECT_THROW(sample_elevation(dem, Point(15, 15)), DomainError);
    EXPECT_THROW(sample_elevation(dem, Point(-0.1, 5)), DomainError);
}

TEST(Sampling, MeanPolygonElevation) {
    RasterGrid dem(1, 2, 0, 0, 10, -9999, 0.0);
    dem(0, 0) = 100;
    dem(0, 1) = 200;
    const Polygon both{{Point(0, 0), Point(20, 0), Point(20, 10), Point(0, 10), Point(0, 0)}, {}};
    EXPECT_DOUBLE_EQ(mean_polygon_elevation(dem, both), 150.0);
    const Polygon tiny{{Point(1, 1), Point(3, 1), Point(3, 3), Point(1, 3), Point(1, 1)}, {}};
    EXPECT_DOUBLE_EQ(mean_polygon_elevation(dem, tiny), 100.0);

    RasterGrid empty(1, 2, 0, 0, 10, -9999, -9999.0);
    EXPECT_THROW(mean_polygon_elevation(empty, both), DomainError);
}
