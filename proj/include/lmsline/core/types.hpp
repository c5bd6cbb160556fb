/**
 * @file types.hpp
 * @brief Primal-plane value types: data points and non-vertical lines.
 */
#pragma once

#include <cmath>
#include <span>

namespace lmsline::core {

/// A data point. Both coordinates must be finite.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

/// Non-vertical line y = slope * x + intercept.
struct LineEq {
    double slope = 0.0;
    double intercept = 0.0;

    double at(double x) const { return slope * x + intercept; }
    /// Vertical residual y - (slope * x + intercept).
    double residual(const Point2& p) const { return p.y - (slope * p.x + intercept); }

    friend bool operator==(const LineEq&, const LineEq&) = default;
};

inline bool is_finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Geometric tolerance used for intersection and contact classification.
inline constexpr double kGeomEps = 1e-9;

/// Absolute tolerance for residuals of `line` over `points`: kGeomEps scaled by
/// the largest magnitude entering the residual computation (never below kGeomEps).
double residual_tolerance(std::span<const Point2> points, const LineEq& line);

}  // namespace lmsline::core
