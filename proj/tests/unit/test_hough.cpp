#include <lmsline/detect/hough.hpp>
#include <lmsline/error.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

namespace lmsline::detect {
namespace {

using core::Point2;

HoughParams small_params(double dRho, double dTheta, int size = 100) {
    HoughParams p;
    p.deltaRho = dRho;
    p.deltaThetaDeg = dTheta;
    p.width = size;
    p.height = size;
    return p;
}

TEST(HoughParams, BinGeometry) {
    const auto p = small_params(20, 20, 1024);
    EXPECT_DOUBLE_EQ(p.diagonal(), std::hypot(1024.0, 1024.0));
    EXPECT_EQ(p.theta_bins(), 9);
    EXPECT_EQ(p.rho_bins(), static_cast<int>(std::ceil(2.0 * p.diagonal() / 20.0)));
    EXPECT_DOUBLE_EQ(p.theta_center_deg(0), 10.0);
    EXPECT_DOUBLE_EQ(p.theta_center_deg(8), 170.0);
    EXPECT_EQ(p.rho_bin(-1e9), 0);
    EXPECT_EQ(p.rho_bin(1e9), p.rho_bins() - 1);
    const int b = p.rho_bin(0.0);
    EXPECT_LE(p.rho_center(b) - 10.0, 0.0);
    EXPECT_GT(p.rho_center(b) + 10.0, 0.0);
    EXPECT_EQ(small_params(7, 7).theta_bins(), 26);

    EXPECT_THROW(small_params(0, 5).validate(), InvalidInput);
    EXPECT_THROW(small_params(5, -1).validate(), InvalidInput);
}

TEST(HoughVote, OriginVotesRhoZeroEverywhere) {
    const std::vector<Point2> origin{{0, 0}};
    const auto acc = hough_vote(origin, small_params(2, 10));
    const int zeroBin = acc.params.rho_bin(0.0);
    for (int t = 0; t < acc.thetaBins; ++t) EXPECT_EQ(acc.at(zeroBin, t), 1u);
    EXPECT_EQ(acc.total_votes(), static_cast<std::uint64_t>(acc.thetaBins));
}

TEST(HoughVote, OneVotePerPointPerTheta) {
    std::vector<Point2> pts;
    for (int k = 0; k < 37; ++k) pts.push_back({double(k % 11), double(k * 3 % 17)});
    const auto acc = hough_vote(pts, small_params(3, 4));
    EXPECT_EQ(acc.total_votes(), pts.size() * static_cast<std::uint64_t>(acc.thetaBins));
    for (int t = 0; t < acc.thetaBins; ++t) {
        std::uint64_t column = 0;
        for (int r = 0; r < acc.rhoBins; ++r) column += acc.at(r, t);
        EXPECT_EQ(column, pts.size());
    }
    EXPECT_EQ(hough_vote(pts, small_params(3, 4), 4).votes, acc.votes);
}

TEST(FindPeaks, EmptyAccumulatorHasNoPeaks) {
    const auto acc = hough_vote({}, small_params(5, 5));
    EXPECT_TRUE(find_peaks(acc, 5).empty());
    EXPECT_THROW(find_peaks(acc, 0), InvalidInput);
}

TEST(FindPeaks, VerticalLineNearThetaZero) {
    std::vector<Point2> pts;
    for (int y = 0; y < 100; ++y) pts.push_back({5.0, double(y)});
    const auto acc = hough_vote(pts, small_params(1, 1));
    const auto peaks = find_peaks(acc, 1);
    ASSERT_EQ(peaks.size(), 1u);
    const double theta = peaks[0].thetaCenterDeg;
    EXPECT_TRUE(theta < 2.0 || theta > 178.0) << theta;
    EXPECT_NEAR(std::abs(peaks[0].rhoCenter), 5.0, 1.0);
    // 1 degree off vertical the column spans two rho bins.
    EXPECT_GE(peaks[0].votes, 50u);
    EXPECT_LE(peaks[0].votes, 100u);
}

TEST(FindPeaks, HorizontalLineNearNinetyDegrees) {
    std::vector<Point2> pts;
    for (int x = 0; x < 80; ++x) pts.push_back({double(x), 40.0});
    const auto acc = hough_vote(pts, small_params(2, 2));
    const auto peaks = find_peaks(acc, 1);
    ASSERT_EQ(peaks.size(), 1u);
    EXPECT_NEAR(peaks[0].thetaCenterDeg, 90.0, 1.0);
    EXPECT_NEAR(peaks[0].rhoCenter, 40.0, 1.0);
}

TEST(FindPeaks, TwoPerpendicularLines) {
    std::vector<Point2> pts;
    for (int k = 0; k < 90; ++k) {
        pts.push_back({double(k), double(k)});        // theta 135
        pts.push_back({double(k), double(90 - k)});   // theta 45
    }
    const auto acc = hough_vote(pts, small_params(2, 2));
    const auto peaks = find_peaks(acc, 2, 10);
    ASSERT_EQ(peaks.size(), 2u);
    EXPECT_GE(peaks[0].votes, peaks[1].votes);
    std::vector<double> thetas{peaks[0].thetaCenterDeg, peaks[1].thetaCenterDeg};
    std::sort(thetas.begin(), thetas.end());
    EXPECT_NEAR(thetas[0], 45.0, 1.0);
    EXPECT_NEAR(thetas[1], 135.0, 1.0);
}

TEST(FindPeaks, PlateauYieldsOnePeakAndRespectsMinVotes) {
    HoughAccumulator acc;
    acc.params = small_params(10, 45, 10);
    acc.rhoBins = 3;
    acc.thetaBins = 4;
    acc.votes = {0, 0, 0, 0,
                 0, 5, 5, 0,
                 0, 0, 0, 2};
    const auto peaks = find_peaks(acc, 10);
    ASSERT_EQ(peaks.size(), 1u);
    EXPECT_EQ(peaks[0].rhoBin, 1);
    EXPECT_EQ(peaks[0].thetaBin, 1);
    EXPECT_EQ(peaks[0].votes, 5u);
    EXPECT_TRUE(find_peaks(acc, 10, 6).empty());
}

TEST(FindPeaks, SortedByVotesThenPosition) {
    HoughAccumulator acc;
    acc.params = small_params(10, 30, 10);
    acc.rhoBins = 3;
    acc.thetaBins = 6;
    acc.votes = {4, 0, 0, 0, 0, 9,
                 0, 0, 0, 0, 0, 0,
                 0, 0, 4, 0, 0, 0};
    const auto peaks = find_peaks(acc, 10);
    ASSERT_EQ(peaks.size(), 3u);
    EXPECT_EQ(peaks[0].votes, 9u);
    EXPECT_EQ(peaks[1].rhoBin, 0);
    EXPECT_EQ(peaks[2].rhoBin, 2);
    EXPECT_EQ(find_peaks(acc, 2).size(), 2u);
}

TEST(SupportingPoints, MatchPeakBinInInputOrder) {
    std::vector<Point2> pts;
    for (int k = 0; k < 50; ++k) pts.push_back({double(k), 20.0});
    pts.push_back({3.0, 90.0});
    pts.push_back({60.0, 21.0});
    const auto acc = hough_vote(pts, small_params(4, 4));
    const auto peak = find_peaks(acc, 1).front();
    const auto support = supporting_points(pts, peak, acc);
    EXPECT_EQ(support.size(), peak.votes);
    std::vector<Point2> expected;
    for (const auto& p : pts) {
        if (acc.vote_bin(p, peak.thetaBin) == peak.rhoBin) expected.push_back(p);
    }
    EXPECT_EQ(support, expected);
    for (const auto& p : support) EXPECT_EQ(acc.vote_bin(p, peak.thetaBin), peak.rhoBin);
    EXPECT_EQ(std::count_if(support.begin(), support.end(), [](const Point2& p) { return p.y == 90.0; }), 0);
}

}  // namespace
}  // namespace lmsline::detect
