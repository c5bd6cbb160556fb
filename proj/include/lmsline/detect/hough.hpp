/**
 * @file hough.hpp
 * @brief Polar Hough voting, peak picking and peak support retrieval.
 *
 * Lines are x*cos(theta) + y*sin(theta) = rho in image coordinates. theta
 * covers [0, 180) degrees and is sampled at bin centers; rho covers [-D, D]
 * with D the image diagonal and is binned by floor((rho + D) / deltaRho).
 */
#pragma once

#include <lmsline/core/types.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lmsline::detect {

struct HoughParams {
    double deltaRho = 20.0;       ///< pixels
    double deltaThetaDeg = 20.0;  ///< degrees
    int width = 1024;             ///< image size, sets D
    int height = 1024;

    /// Throws InvalidInput unless both bin sizes and the image size are positive.
    void validate() const;
    double diagonal() const;
    int rho_bins() const;
    int theta_bins() const;
    double theta_center_deg(int thetaBin) const;
    double rho_center(int rhoBin) const;
    /// Bin containing rho, clamped to the valid range.
    int rho_bin(double rho) const;
};

struct HoughAccumulator {
    HoughParams params;
    int rhoBins = 0;
    int thetaBins = 0;
    /// votes[rhoBin * thetaBins + thetaBin]
    std::vector<std::uint32_t> votes;
    std::vector<double> cosTable;
    std::vector<double> sinTable;

    std::uint32_t at(int rhoBin, int thetaBin) const {
        return votes[static_cast<std::size_t>(rhoBin) * thetaBins + thetaBin];
    }
    std::uint64_t total_votes() const;
    /// rho bin a point votes into at the given theta bin.
    int vote_bin(const core::Point2& p, int thetaBin) const;
};

struct Peak {
    int rhoBin = 0;
    int thetaBin = 0;
    std::uint32_t votes = 0;
    double rhoCenter = 0.0;
    double thetaCenterDeg = 0.0;
};

/// One vote per (point, theta bin). With workers > 1 the points are split
/// across threads voting into private accumulators that are then summed.
HoughAccumulator hough_vote(std::span<const core::Point2> points, const HoughParams& params,
                            std::size_t workers = 1);

/// Local maxima over the 8-neighborhood (bins outside the grid are ignored).
/// On a plateau only the first bin in (rho, theta) scan order qualifies: a
/// peak beats every earlier neighbor strictly and every later one weakly.
/// Sorted by votes descending, then (rhoBin, thetaBin) ascending.
std::vector<Peak> find_peaks(const HoughAccumulator& acc, std::size_t maxPeaks,
                             std::uint32_t minVotes = 1);

/// Points whose vote at peak.thetaBin landed in peak.rhoBin, in input order.
std::vector<core::Point2> supporting_points(std::span<const core::Point2> points, const Peak& peak,
                                            const HoughAccumulator& acc);

}  // namespace lmsline::detect
