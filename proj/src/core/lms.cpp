#include <lmsline/core/lms.hpp>
#include <lmsline/error.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace lmsline::core {

namespace {

void validate(std::span<const Point2> points, std::size_t q) {
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (!is_finite(points[k])) {
            throw InvalidInput("point " + std::to_string(k) + " has a non-finite coordinate");
        }
    }
    if (points.size() < 3) {
        throw DegenerateInput("need at least 3 points, got " + std::to_string(points.size()));
    }
    const double x0 = points.front().x;
    const bool distinct = std::any_of(points.begin(), points.end(),
                                      [x0](const Point2& p) { return p.x != x0; });
    if (!distinct) {
        throw DegenerateInput("fewer than 2 distinct x-coordinates (vertical data)");
    }
    if (q < 2 || q > points.size()) {
        throw InvalidInput("coverage q=" + std::to_string(q) + " outside [2, " +
                           std::to_string(points.size()) + "]");
    }
}

LmsFit make_fit(std::span<const Point2> points, std::size_t q, double u, double vLow,
                double vHigh, DualIntersection anchor) {
    LmsFit fit;
    fit.bracelet = Bracelet{u, vLow, vHigh, anchor, q};
    fit.line = bisector_of(fit.bracelet);
    // Adding +0.0 turns -0.0 into +0.0 and leaves every other value unchanged.
    fit.line.slope += 0.0;
    fit.line.intercept += 0.0;
    fit.slabHeight = vHigh - vLow;
    const double half = 0.5 * fit.slabHeight;
    fit.lmsValue = half * half;
    fit.coverage = q;
    fit.contactIndices = slab_contacts(points, fit.line, half);
    return fit;
}

}  // namespace

std::size_t default_coverage(std::size_t n) { return n / 2 + 1; }

LmsFit solve_lms(std::span<const Point2> points, std::optional<std::size_t> q,
                 const backend::BackendOptions& options) {
    const std::size_t coverage = q.value_or(default_coverage(points.size()));
    validate(points, coverage);

    const auto lines = dualize(points);
    const auto best = backend::find_min_bracelet(lines, coverage, options);
    const DualIntersection anchor{best.u, lines[best.i].at(best.u), best.i, best.j};
    return make_fit(points, coverage, best.u, best.vLow, best.vHigh, anchor);
}

LmsFit oracle_lms(std::span<const Point2> points, std::size_t q) {
    validate(points, q);
    const std::size_t n = points.size();

    // Candidate key: (span, i, j, -topIntercept), i.e. the same order solve_lms uses
    // on (height, i, j, vLow) once intercepts c are mapped to dual values v = -c.
    bool found = false;
    double bestSpan = 0.0;
    std::size_t bestI = 0;
    std::size_t bestJ = 0;
    double bestSlope = 0.0;
    double bestBottom = 0.0;
    double bestTop = 0.0;

    std::vector<double> intercepts(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (points[i].x == points[j].x) continue;
            const double slope = (points[j].y - points[i].y) / (points[j].x - points[i].x);
            for (std::size_t k = 0; k < n; ++k) {
                intercepts[k] = points[k].y - slope * points[k].x;
            }
            std::sort(intercepts.begin(), intercepts.end());
            for (std::size_t r = 0; r + q <= n; ++r) {
                const double bottom = intercepts[r];
                const double top = intercepts[r + q - 1];
                const double span = top - bottom;
                const bool better =
                    !found || std::tie(span, i, j) < std::tie(bestSpan, bestI, bestJ) ||
                    (span == bestSpan && i == bestI && j == bestJ && -top < -bestTop);
                if (better) {
                    found = true;
                    bestSpan = span;
                    bestI = i;
                    bestJ = j;
                    bestSlope = slope;
                    bestBottom = bottom;
                    bestTop = top;
                }
            }
        }
    }
    if (!found) {
        throw InternalError("oracle_lms: no candidate window");
    }
    const DualIntersection anchor{bestSlope, points[bestI].x * bestSlope - points[bestI].y, bestI,
                                  bestJ};
    return make_fit(points, q, bestSlope, -bestTop, -bestBottom, anchor);
}

double median_sq_residual(std::span<const Point2> points, const LineEq& line, std::size_t q) {
    if (points.empty() || q < 1 || q > points.size()) {
        throw InvalidInput("median_sq_residual: q=" + std::to_string(q) + " outside [1, " +
                           std::to_string(points.size()) + "]");
    }
    std::vector<double> squares;
    squares.reserve(points.size());
    for (const auto& p : points) {
        const double r = line.residual(p);
        squares.push_back(r * r);
    }
    std::nth_element(squares.begin(), squares.begin() + static_cast<std::ptrdiff_t>(q - 1),
                     squares.end());
    return squares[q - 1];
}

std::vector<std::size_t> slab_contacts(std::span<const Point2> points, const LineEq& line,
                                       double halfHeight) {
    const double tol = residual_tolerance(points, line) + kGeomEps * halfHeight;
    std::vector<std::size_t> contacts;
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (std::abs(std::abs(line.residual(points[k])) - halfHeight) <= tol) {
            contacts.push_back(k);
        }
    }
    return contacts;
}

}  // namespace lmsline::core
