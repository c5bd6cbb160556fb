/**
 * @file duality.hpp
 * @brief Point-line duality and bracelet search in the dual plane.
 *
 * A primal point (a, b) maps to the dual line v = a*u - b, and the primal line
 * y = a*x - b maps to the dual point (a, b). A point lies above a line exactly
 * when its dual line passes below the line's dual point, so a slab of vertical
 * height h around y = s*x + c becomes a vertical segment ("bracelet") of length
 * h at u = s, and the points inside the slab are the dual lines crossing it.
 */
#pragma once

#include <lmsline/core/types.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace lmsline::core {

/// Dual of a primal point: v = a*u - b with (a, b) = (x, y) of the source point.
struct DualLine {
    double a = 0.0;
    double b = 0.0;
    std::size_t sourceIndex = 0;

    double at(double u) const { return a * u - b; }
};

/// Crossing of two non-parallel dual lines; i < j always.
struct DualIntersection {
    double u = 0.0;
    double v = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
};

/// Vertical segment at abscissa u crossed by `coverage` dual lines, with one
/// end on the anchor intersection.
struct Bracelet {
    double u = 0.0;
    double vLow = 0.0;
    double vHigh = 0.0;
    DualIntersection anchor;
    std::size_t coverage = 0;

    double height() const { return vHigh - vLow; }
};

/// One entry of a vertical cut: the value of dual line `index` at the cut.
struct CutValue {
    double v = 0.0;
    std::size_t index = 0;
};

/// Dual line of each point, in input order. Throws InvalidInput on a
/// non-finite coordinate.
std::vector<DualLine> dualize(std::span<const Point2> points);

/// Intersection of two dual lines, or nullopt when they are parallel (the
/// source points share an x-coordinate). Throws InvalidInput when both
/// arguments come from the same source point.
std::optional<DualIntersection> pair_intersection(const DualLine& l1, const DualLine& l2);

/// Values of all lines at u, sorted ascending; ties ordered by line index.
std::vector<CutValue> vertical_cut(std::span<const DualLine> lines, double u);

/// Shortest bracelet of coverage q anchored at ip: of the window of q
/// consecutive cut values ending at the upper anchor copy and the window
/// starting at the lower anchor copy, the shorter one (the lower one on a
/// tie). nullopt when q is outside [2, n] or neither window fits.
std::optional<Bracelet> bracelet_at(const DualIntersection& ip, std::span<const DualLine> lines,
                                    std::size_t q);

/// Primal line whose dual point is (u, v): y = u*x - v.
inline LineEq primal_line_of(double u, double v) { return {u, -v}; }

/// Primal line bisecting the slab whose dual is the bracelet.
inline LineEq bisector_of(const Bracelet& br) { return {br.u, -0.5 * (br.vLow + br.vHigh)}; }

}  // namespace lmsline::core
