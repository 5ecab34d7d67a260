#include <random>

#include <gtest/gtest.h>

#include "psh/screening.hpp"

using namespace psh;

namespace {

const SchemeConfig kDefaults;

PshSite site_at(const Point& lower, bool technical = true) {
    PshSite s;
    s.scheme = Scheme::L2L;
    s.pair.lower_centroid = lower + Point(5000, 0);
    s.energy_theoretical_gwh = 0.1;
    if (technical) {
        Pairing t;
        t.lower_centroid = lower;
        s.technical_pair = t;
        s.energy_technical_gwh = 0.05;
    }
    return s;
}

Polygon box(double x0, double y0, double x1, double y1) {
    return {{Point(x0, y0), Point(x1, y0), Point(x1, y1), Point(x0, y1), Point(x0, y0)}, {}};
}

}  // namespace

TEST(Distances, PointToSegmentsAndPoints) {
    const std::vector<Polyline> road = {{Point(0, 0), Point(1000, 0)}};
    EXPECT_DOUBLE_EQ(distance_to_polylines(Point(500, 100), road), 100.0);
    EXPECT_DOUBLE_EQ(distance_to_polylines(Point(1060, 80), road), 100.0);
    EXPECT_DOUBLE_EQ(distance_to_polylines(Point(300, 0), road), 0.0);
    EXPECT_THROW(distance_to_polylines(Point(0, 0), {}), DomainError);
    EXPECT_DOUBLE_EQ(distance_to_points(Point(3, 4), {Point(0, 0), Point(100, 100)}), 5.0);
    EXPECT_TRUE(std::isinf(distance_to_points(Point(3, 4), {})));
}

TEST(ProtectedAreas, EvenOddWithBoundaryInside) {
    Polygon ring = box(0, 0, 100, 100);
    ring.holes.push_back({Point(40, 40), Point(60, 40), Point(60, 60), Point(40, 60), Point(40, 40)});
    const std::vector<Polygon> parks = {ring};
    EXPECT_TRUE(point_in_protected_area(Point(10, 10), parks));
    EXPECT_FALSE(point_in_protected_area(Point(50, 50), parks));
    EXPECT_TRUE(point_in_protected_area(Point(100, 30), parks));
    EXPECT_TRUE(point_in_protected_area(Point(0, 0), parks));
    EXPECT_FALSE(point_in_protected_area(Point(100.001, 30), parks));
    EXPECT_FALSE(point_in_protected_area(Point(10, 10), {}));
}

TEST(Tiers, WorkedExamples) {
    ScreeningContext ctx;
    ctx.roads = {{Point(-19999, -50000), Point(-19999, 50000)}};
    ctx.planned_substations = {Point(15000, 0)};
    ctx.operational_substations = {Point(25000, 0)};
    const auto s = site_at(Point(0, 0));
    EXPECT_EQ(classify_tier(s, ctx, kDefaults), Tier::Technical);

    ctx.operational_substations = {Point(0, 18000)};
    EXPECT_EQ(classify_tier(s, ctx, kDefaults), Tier::Exploitable);

    ctx.protected_areas = {box(-10, -10, 10, 10)};
    EXPECT_EQ(classify_tier(s, ctx, kDefaults), Tier::Technical);

    EXPECT_EQ(classify_tier(site_at(Point(0, 0), false), ctx, kDefaults), Tier::Theoretical);

    ctx.roads = {{Point(-20001, -50000), Point(-20001, 50000)}};
    EXPECT_EQ(classify_tier(s, ctx, kDefaults), Tier::Theoretical);

    ctx.roads.clear();
    EXPECT_EQ(classify_tier(s, ctx, kDefaults), Tier::Theoretical);
}

TEST(Tiers, TechnicalPairLocatesTheSite) {
    ScreeningContext ctx;
    ctx.roads = {{Point(0, -100), Point(0, 100)}};
    ctx.operational_substations = {Point(0, 0)};
    SchemeConfig cfg;
    cfg.infra_buffer_m = 1000;
    // theoretical lower reservoir is 5 km away, technical lower reservoir is on the road
    EXPECT_EQ(classify_tier(site_at(Point(0, 0)), ctx, cfg), Tier::Exploitable);
}

TEST(Tiers, BufferMonotonicityAndParksNeverPromote) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> coord(-40000, 40000);
    std::uniform_real_distribution<double> buf(1000, 30000);
    for (int i = 0; i < 1000; ++i) {
        ScreeningContext ctx;
        ctx.roads = {{Point(coord(rng), coord(rng)), Point(coord(rng), coord(rng))}};
        ctx.planned_substations = {Point(coord(rng), coord(rng))};
        ctx.operational_substations = {Point(coord(rng), coord(rng))};
        const auto s = site_at(Point(coord(rng) / 4, coord(rng) / 4), rng() % 5 != 0);
        SchemeConfig small, large;
        small.infra_buffer_m = buf(rng);
        large.infra_buffer_m = small.infra_buffer_m + buf(rng);
        const auto t_small = classify_tier(s, ctx, small);
        EXPECT_LE(static_cast<int>(t_small), static_cast<int>(classify_tier(s, ctx, large)));

        auto with_park = ctx;
        const double x = coord(rng), y = coord(rng);
        with_park.protected_areas = {box(x, y, x + buf(rng), y + buf(rng))};
        EXPECT_LE(static_cast<int>(classify_tier(s, with_park, small)), static_cast<int>(t_small));
    }
}
