#include <lmsline/detect/line_detect.hpp>
#include <lmsline/error.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace lmsline::detect {

using core::LineEq;
using core::Point2;

std::string_view method_name(Method method) {
    switch (method) {
        case Method::SHT: return "SHT";
        case Method::OLS: return "OLS";
        case Method::LMS: return "LMS";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "SHT") return Method::SHT;
    if (upper == "OLS") return Method::OLS;
    if (upper == "LMS") return Method::LMS;
    throw InvalidInput("unknown method '" + std::string(name) + "' (expected SHT, OLS or LMS)");
}

Frame frame_for_theta(double thetaDeg) {
    return (thetaDeg < 45.0 || thetaDeg > 135.0) ? Frame::XofY : Frame::YofX;
}

std::vector<Point2> to_frame(std::span<const Point2> points, Frame frame) {
    std::vector<Point2> out(points.begin(), points.end());
    if (frame == Frame::XofY) {
        for (auto& p : out) std::swap(p.x, p.y);
    }
    return out;
}

LineEq image_line_of(const LineEq& line, Frame frame) {
    if (frame == Frame::YofX) return line;
    if (line.slope == 0.0) {
        return {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::quiet_NaN()};
    }
    return {1.0 / line.slope, -line.intercept / line.slope};
}

std::pair<double, double> polar_of(const LineEq& line, Frame frame) {
    // YofX: -s*x + y = c.  XofY: x - s*y = c.
    const double norm = std::hypot(line.slope, 1.0);
    double nx = frame == Frame::YofX ? -line.slope / norm : 1.0 / norm;
    double ny = frame == Frame::YofX ? 1.0 / norm : -line.slope / norm;
    double rho = line.intercept / norm;
    if (ny < 0.0 || (ny == 0.0 && nx < 0.0)) {
        nx = -nx;
        ny = -ny;
        rho = -rho;
    }
    double theta = std::atan2(ny, nx) * 180.0 / std::numbers::pi;
    if (theta >= 180.0) theta -= 180.0;
    return {rho, theta};
}

LineEq line_from_polar(double rho, double thetaDeg, Frame frame) {
    const double theta = thetaDeg * std::numbers::pi / 180.0;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    if (frame == Frame::YofX) {
        if (s == 0.0) throw InvalidInput("vertical line has no y(x) form");
        return {-c / s, rho / s};
    }
    if (c == 0.0) throw InvalidInput("horizontal line has no x(y) form");
    return {-s / c, rho / c};
}

std::vector<Point2> extract_points(const imaging::GrayImage& image, int threshold) {
    std::vector<Point2> points;
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            if (image.at(x, y) >= threshold) points.push_back({double(x), double(y)});
        }
    }
    return points;
}

std::vector<Point2> extract_sobel_points(const imaging::GrayImage& image, double threshold) {
    std::vector<Point2> points;
    for (int y = 1; y + 1 < image.height(); ++y) {
        for (int x = 1; x + 1 < image.width(); ++x) {
            auto px = [&](int dx, int dy) { return double(image.at(x + dx, y + dy)); };
            const double gx = (px(1, -1) + 2 * px(1, 0) + px(1, 1)) - (px(-1, -1) + 2 * px(-1, 0) + px(-1, 1));
            const double gy = (px(-1, 1) + 2 * px(0, 1) + px(1, 1)) - (px(-1, -1) + 2 * px(0, -1) + px(1, -1));
            if (std::hypot(gx, gy) >= threshold) points.push_back({double(x), double(y)});
        }
    }
    return points;
}

LineEq refine_ols(std::span<const Point2> support, Frame frame) {
    const auto pts = to_frame(support, frame);
    if (pts.size() < 2) throw DegenerateInput("least squares needs at least 2 points");
    double mx = 0.0;
    double my = 0.0;
    for (const auto& p : pts) {
        mx += p.x;
        my += p.y;
    }
    mx /= double(pts.size());
    my /= double(pts.size());
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& p : pts) {
        sxx += (p.x - mx) * (p.x - mx);
        sxy += (p.x - mx) * (p.y - my);
    }
    if (sxx == 0.0) throw DegenerateInput("least squares needs 2 distinct regressor values");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

core::LmsFit refine_lms(std::span<const Point2> support, Frame frame, std::optional<std::size_t> q,
                        const backend::BackendOptions& options) {
    const auto pts = to_frame(support, frame);
    return core::solve_lms(pts, q, options);
}

LineDetection refine_peak(std::span<const Point2> points, const HoughAccumulator& acc,
                          const Peak& peak, Method method, const backend::BackendOptions& backend) {
    LineDetection det;
    det.method = method;
    det.peak = peak;
    det.frame = frame_for_theta(peak.thetaCenterDeg);
    det.support = supporting_points(points, peak, acc);
    switch (method) {
        case Method::SHT:
            det.line = line_from_polar(peak.rhoCenter, peak.thetaCenterDeg, det.frame);
            break;
        case Method::OLS:
            det.line = refine_ols(det.support, det.frame);
            break;
        case Method::LMS: {
            auto fit = refine_lms(det.support, det.frame, std::nullopt, backend);
            det.line = fit.line;
            det.lmsValue = fit.lmsValue;
            det.fit = std::move(fit);
            break;
        }
    }
    std::tie(det.rho, det.thetaDeg) = polar_of(det.line, det.frame);
    return det;
}

std::vector<LineDetection> detect_lines(const imaging::GrayImage& image, DetectOptions options) {
    options.hough.width = image.width();
    options.hough.height = image.height();
    options.hough.validate();
    if (image.empty()) return {};
    const auto points = extract_points(image, options.threshold);
    if (points.empty()) return {};
    const auto acc = hough_vote(points, options.hough);
    std::vector<LineDetection> out;
    for (const auto& peak : find_peaks(acc, options.maxPeaks, options.minVotes)) {
        out.push_back(refine_peak(points, acc, peak, options.method, options.backend));
    }
    return out;
}

}  // namespace lmsline::detect
