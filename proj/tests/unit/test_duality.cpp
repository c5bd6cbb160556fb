#include "properties.hpp"

#include <lmsline/core/duality.hpp>
#include <lmsline/error.hpp>

#include <gtest/gtest.h>

#include <limits>
#include <vector>

namespace lmsline::core {
namespace {

std::vector<DualLine> duals(std::vector<Point2> pts) { return dualize(pts); }

TEST(Dualize, MapsPointToLine) {
    const auto lines = duals({{2, 3}, {0, 0}});
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[0].a, 2.0);
    EXPECT_EQ(lines[0].b, 3.0);
    EXPECT_EQ(lines[0].sourceIndex, 0u);
    EXPECT_EQ(lines[0].at(1.0), -1.0);  // v = 2u - 3
    EXPECT_EQ(lines[1].at(5.0), 0.0);
    EXPECT_EQ(lines[1].sourceIndex, 1u);
}

TEST(Dualize, IntersectionIsDualOfPrimalLine) {
    const auto lines = duals({{0, 0}, {1, 1}});
    const auto ip = pair_intersection(lines[0], lines[1]);
    ASSERT_TRUE(ip);
    EXPECT_EQ(ip->u, 1.0);
    EXPECT_EQ(ip->v, 0.0);
    const auto line = primal_line_of(ip->u, ip->v);  // y = 1*x - 0
    EXPECT_EQ(line.slope, 1.0);
    EXPECT_EQ(line.intercept, 0.0);
}

TEST(Dualize, RejectsNonFinite) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(duals({{0, 0}, {nan, 1}}), InvalidInput);
    EXPECT_THROW(duals({{std::numeric_limits<double>::infinity(), 1}}), InvalidInput);
}

TEST(PairIntersection, Examples) {
    auto lines = duals({{2, 5}, {2, 9}});
    EXPECT_FALSE(pair_intersection(lines[0], lines[1]));

    // Hand solve: 0*u - 1 = 4u - 3  =>  u = 0.5, v = -1.
    lines = duals({{0, 1}, {4, 3}});
    const auto ip = pair_intersection(lines[1], lines[0]);
    ASSERT_TRUE(ip);
    EXPECT_DOUBLE_EQ(ip->u, 0.5);
    EXPECT_DOUBLE_EQ(ip->v, -1.0);
    EXPECT_EQ(ip->i, 0u);
    EXPECT_EQ(ip->j, 1u);
}

TEST(PairIntersection, SameSourceIsAnError) {
    const auto lines = duals({{1, 2}});
    EXPECT_THROW(pair_intersection(lines[0], lines[0]), InvalidInput);
}

TEST(PairIntersection, DuplicatePointsAreParallel) {
    const auto lines = duals({{1, 2}, {1, 2}});
    EXPECT_FALSE(pair_intersection(lines[0], lines[1]));
}

TEST(VerticalCut, SortedWithIndexTies) {
    const auto lines = duals({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    const auto cut = vertical_cut(lines, 0.0);
    ASSERT_EQ(cut.size(), 4u);
    EXPECT_EQ(cut[0].v, -1.0);
    EXPECT_EQ(cut[1].v, -1.0);
    EXPECT_EQ(cut[2].v, 0.0);
    EXPECT_EQ(cut[3].v, 0.0);
    EXPECT_EQ(cut[0].index, 2u);
    EXPECT_EQ(cut[1].index, 3u);
    EXPECT_EQ(cut[2].index, 0u);
    EXPECT_EQ(cut[3].index, 1u);
}

TEST(VerticalCut, SingleLineAndConcurrentLines) {
    auto cut = vertical_cut(duals({{3, 4}}), 7.0);
    ASSERT_EQ(cut.size(), 1u);
    EXPECT_EQ(cut[0].v, 7.0 * 3 - 4);

    // Points on y = x + 1: all duals pass through (1, -1).
    cut = vertical_cut(duals({{1, 2}, {3, 4}, {5, 6}}), 1.0);
    for (const auto& c : cut) EXPECT_EQ(c.v, -1.0);
}

TEST(BraceletAt, SquareDownwardWindowOnly) {
    const auto lines = duals({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    const auto ip = pair_intersection(lines[0], lines[1]);
    ASSERT_TRUE(ip);
    EXPECT_EQ(ip->u, 0.0);
    EXPECT_EQ(ip->v, 0.0);
    const auto br = bracelet_at(*ip, lines, 3);
    ASSERT_TRUE(br);
    EXPECT_EQ(br->u, 0.0);
    EXPECT_EQ(br->vLow, -1.0);
    EXPECT_EQ(br->vHigh, 0.0);
    EXPECT_EQ(br->height(), 1.0);
    EXPECT_EQ(br->coverage, 3u);
}

TEST(BraceletAt, CollinearPointsGiveZeroHeight) {
    const auto lines = duals({{1, 2}, {3, 4}, {5, 6}});
    for (const auto& [a, b] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
        const auto ip = pair_intersection(lines[a], lines[b]);
        ASSERT_TRUE(ip);
        const auto br = bracelet_at(*ip, lines, 3);
        ASSERT_TRUE(br);
        EXPECT_EQ(br->height(), 0.0);
    }
}

TEST(BraceletAt, CoverageOutOfRange) {
    const auto lines = duals({{0, 0}, {1, 3}, {2, 1}, {3, 2}});
    const auto ip = pair_intersection(lines[0], lines[1]);
    ASSERT_TRUE(ip);
    EXPECT_FALSE(bracelet_at(*ip, lines, 5));
    EXPECT_FALSE(bracelet_at(*ip, lines, 1));
}

TEST(BraceletAt, AnchorOnAnEndAndCoverageCounted) {
    const auto pts = testing::random_points(24, 11);
    const auto lines = dualize(pts);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const auto ip = pair_intersection(lines[i], lines[j]);
            ASSERT_TRUE(ip);
            const auto br = bracelet_at(*ip, lines, 13);
            ASSERT_TRUE(br);
            EXPECT_LE(br->vLow, br->vHigh);
            const double tol = 1e-9;
            EXPECT_TRUE(std::abs(br->vLow - ip->v) <= tol || std::abs(br->vHigh - ip->v) <= tol);
            std::size_t crossing = 0;
            for (const auto& l : lines) {
                const double v = l.at(br->u);
                crossing += (v >= br->vLow - tol && v <= br->vHigh + tol);
            }
            EXPECT_GE(crossing, 13u);
        }
    }
}

TEST(DualityProperties, OrderReversing) { EXPECT_EQ(testing::order_reversing_failures(1000, 1), 0); }

TEST(DualityProperties, IntersectionPreserving) {
    EXPECT_EQ(testing::intersection_preserving_failures(1000, 2), 0);
}

TEST(DualityProperties, StripEnclosure) { EXPECT_EQ(testing::strip_enclosure_failures(1000, 3), 0); }

}  // namespace
}  // namespace lmsline::core
