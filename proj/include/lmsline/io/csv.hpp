/**
 * @file csv.hpp
 * @brief CSV formats: point sets, fit rows, detection rows.
 *
 * Doubles are written in shortest round-trip form, so reading a file back
 * reproduces the exact values.
 */
#pragma once

#include <lmsline/core/lms.hpp>
#include <lmsline/core/types.hpp>

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lmsline::detect {
struct LineDetection;
}

namespace lmsline::io {

std::string format_double(double value);

/// Header `x,y`, then one `x,y` row per point. Blank lines are ignored.
/// Throws ParseError with the byte offset of the offending field.
std::vector<core::Point2> parse_points_csv(std::string_view text);
std::vector<core::Point2> read_points_csv(const std::filesystem::path& path);
void write_points_csv(std::ostream& out, std::span<const core::Point2> points);

inline constexpr std::string_view kFitHeader = "slope,intercept,lms_value,slab_height,coverage";
void write_fit_row(std::ostream& out, const core::LmsFit& fit);

inline constexpr std::string_view kDetectionHeader =
    "method,rho,theta,slope,intercept,lms_value,support_count";
/// Header plus one row per detection; slope/intercept in the image frame
/// (y = slope*x + intercept), lms_value empty unless the method is LMS.
void write_detections(std::ostream& out, std::span<const detect::LineDetection> detections);

}  // namespace lmsline::io
