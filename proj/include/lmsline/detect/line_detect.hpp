/**
 * @file line_detect.hpp
 * @brief Hough peak refinement by bin center (SHT), least squares (OLS) or LMS.
 *
 * Regression frame: slope/intercept fits cannot express vertical lines, so a
 * peak whose theta center lies within 45 degrees of 0 (or 180) is fitted as
 * x = slope*y + intercept, and every other peak as y = slope*x + intercept.
 */
#pragma once

#include <lmsline/backend/backend.hpp>
#include <lmsline/core/lms.hpp>
#include <lmsline/core/types.hpp>
#include <lmsline/detect/hough.hpp>
#include <lmsline/imaging/image.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace lmsline::detect {

enum class Method { SHT, OLS, LMS };

std::string_view method_name(Method method);
/// "SHT", "OLS" or "LMS" (case-insensitive); throws InvalidInput otherwise.
Method parse_method(std::string_view name);

enum class Frame {
    YofX,  ///< y = slope*x + intercept
    XofY,  ///< x = slope*y + intercept
};

Frame frame_for_theta(double thetaDeg);

/// Swap coordinates for Frame::XofY, identity for Frame::YofX.
std::vector<core::Point2> to_frame(std::span<const core::Point2> points, Frame frame);

/// Image-frame y = slope*x + intercept of a frame line. A vertical line
/// (XofY with zero slope) yields slope = +inf and intercept = NaN.
core::LineEq image_line_of(const core::LineEq& line, Frame frame);

/// Normal form (rho, theta in degrees, [0, 180)) of a frame line.
std::pair<double, double> polar_of(const core::LineEq& line, Frame frame);

/// Frame line through the normal-form line (rho, theta). Throws InvalidInput
/// when the line is parallel to the frame's dependent axis.
core::LineEq line_from_polar(double rho, double thetaDeg, Frame frame);

struct LineDetection {
    Method method = Method::SHT;
    Frame frame = Frame::YofX;
    /// Fitted line in `frame`.
    core::LineEq line;
    double rho = 0.0;
    double thetaDeg = 0.0;
    Peak peak;
    std::vector<core::Point2> support;
    /// LMS only.
    std::optional<double> lmsValue;
    std::optional<core::LmsFit> fit;

    core::LineEq image_line() const { return image_line_of(line, frame); }
};

/// Pixel centers (x = column, y = row, y downward) with intensity >= threshold,
/// in row-major order.
std::vector<core::Point2> extract_points(const imaging::GrayImage& image, int threshold = 128);

/// Interior pixels whose Sobel gradient magnitude is >= threshold.
std::vector<core::Point2> extract_sobel_points(const imaging::GrayImage& image, double threshold);

/// Least squares in the given frame. Throws DegenerateInput for fewer than 2
/// points or a single distinct regressor value.
core::LineEq refine_ols(std::span<const core::Point2> support, Frame frame = Frame::YofX);

/// solve_lms on the support in the given frame; the fit is expressed in that
/// frame. q defaults to floor(n/2) + 1.
core::LmsFit refine_lms(std::span<const core::Point2> support, Frame frame = Frame::YofX,
                        std::optional<std::size_t> q = std::nullopt,
                        const backend::BackendOptions& options = {});

struct DetectOptions {
    HoughParams hough;
    Method method = Method::LMS;
    std::size_t maxPeaks = 1;
    std::uint32_t minVotes = 3;
    int threshold = 128;
    backend::BackendOptions backend;
};

/// Refine one peak of `acc` (built from `points`) with the given method.
LineDetection refine_peak(std::span<const core::Point2> points, const HoughAccumulator& acc,
                          const Peak& peak, Method method,
                          const backend::BackendOptions& backend = {});

/// extract -> vote -> peaks -> support -> refine. Hough params take their
/// image size from `image`.
std::vector<LineDetection> detect_lines(const imaging::GrayImage& image, DetectOptions options);

}  // namespace lmsline::detect
