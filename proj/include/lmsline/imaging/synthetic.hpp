/**
 * @file synthetic.hpp
 * @brief Seeded single-line test images with recorded ground truth.
 *
 * The line is clipped to the rectangle of pixel centers and walked along its
 * major axis; at each step the minor coordinate is rounded to the nearest pixel
 * (the midpoint rule). Each raster pixel is kept with probability
 * samplingProb. Every other pixel is then set with probability noiseProb.
 *
 * Randomness comes from two std::mt19937_64 streams seeded through
 * std::seed_seq from (seed, stream id): stream 1 drives line sampling (one
 * draw per raster pixel, walk order), stream 2 drives noise (one draw per
 * image pixel, row-major, raster pixels included but never set). Both the
 * engine and seed_seq are fully specified by the standard, so images are
 * reproducible across platforms.
 */
#pragma once

#include <lmsline/core/types.hpp>
#include <lmsline/imaging/image.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <variant>
#include <vector>

namespace lmsline::imaging {

struct Segment {
    core::Point2 p0;
    core::Point2 p1;
};

struct SyntheticSpec {
    int width = 1024;
    int height = 1024;
    /// Segment endpoints, or an infinite line y = slope*x + intercept.
    std::variant<Segment, core::LineEq> line = core::LineEq{1.0, 0.0};
    double samplingProb = 0.5;
    double noiseProb = 0.0;
    std::uint64_t seed = 0;
};

struct PixelXY {
    int x = 0;
    int y = 0;
    friend bool operator==(const PixelXY&, const PixelXY&) = default;
};

struct GroundTruth {
    /// Clipped segment actually rasterized.
    Segment segment;
    /// y = slope*x + intercept; nullopt for a vertical line.
    std::optional<core::LineEq> line;
    /// Normal form x*cos(theta) + y*sin(theta) = rho, theta in [0, 180) degrees.
    double rho = 0.0;
    double thetaDeg = 0.0;
    std::uint64_t seed = 0;
    std::vector<PixelXY> raster;
    std::vector<PixelXY> linePixels;
    std::vector<PixelXY> noisePixels;
};

struct SyntheticImage {
    GrayImage image;
    GroundTruth truth;
};

/// Throws InvalidInput for probabilities outside [0, 1], non-positive size,
/// or a line that misses the image.
SyntheticImage gen_synthetic(const SyntheticSpec& spec);

/// Normal form (rho, theta in degrees, [0, 180)) of the line through p0 and p1.
std::pair<double, double> polar_of_segment(const core::Point2& p0, const core::Point2& p1);

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
double uniform01(std::mt19937_64& engine);

/// Engine for (seed, stream); streams 1 and 2 are used by gen_synthetic.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint32_t stream);

/// Sidecar CSV: two '#' comment lines with parameters, then `kind,x,y` rows.
void write_ground_truth(std::ostream& out, const SyntheticSpec& spec, const GroundTruth& truth);
void write_ground_truth(const std::filesystem::path& path, const SyntheticSpec& spec,
                        const GroundTruth& truth);

}  // namespace lmsline::imaging
