#include <lmsline/core/duality.hpp>
#include <lmsline/error.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace lmsline::core {

double residual_tolerance(std::span<const Point2> points, const LineEq& line) {
    double scale = 1.0;
    for (const auto& p : points) {
        scale = std::max(scale, std::abs(p.y) + std::abs(line.slope * p.x) + std::abs(line.intercept));
    }
    return kGeomEps * scale;
}

std::vector<DualLine> dualize(std::span<const Point2> points) {
    std::vector<DualLine> lines;
    lines.reserve(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (!is_finite(points[k])) {
            throw InvalidInput("point " + std::to_string(k) + " has a non-finite coordinate");
        }
        lines.push_back({points[k].x, points[k].y, k});
    }
    return lines;
}

std::optional<DualIntersection> pair_intersection(const DualLine& l1, const DualLine& l2) {
    if (l1.sourceIndex == l2.sourceIndex) {
        throw InvalidInput("pair_intersection: both lines come from point " +
                           std::to_string(l1.sourceIndex));
    }
    const DualLine& first = l1.sourceIndex < l2.sourceIndex ? l1 : l2;
    const DualLine& second = l1.sourceIndex < l2.sourceIndex ? l2 : l1;
    if (first.a == second.a) {
        return std::nullopt;
    }
    const double u = (first.b - second.b) / (first.a - second.a);
    return DualIntersection{u, first.at(u), first.sourceIndex, second.sourceIndex};
}

std::vector<CutValue> vertical_cut(std::span<const DualLine> lines, double u) {
    std::vector<CutValue> cut;
    cut.reserve(lines.size());
    for (std::size_t k = 0; k < lines.size(); ++k) {
        cut.push_back({lines[k].at(u), k});
    }
    std::sort(cut.begin(), cut.end(), [](const CutValue& lhs, const CutValue& rhs) {
        return lhs.v < rhs.v || (lhs.v == rhs.v && lhs.index < rhs.index);
    });
    return cut;
}

std::optional<Bracelet> bracelet_at(const DualIntersection& ip, std::span<const DualLine> lines,
                                    std::size_t q) {
    const std::size_t n = lines.size();
    if (q < 2 || q > n) {
        return std::nullopt;
    }
    const auto cut = vertical_cut(lines, ip.u);
    std::size_t posI = n;
    std::size_t posJ = n;
    for (std::size_t r = 0; r < n; ++r) {
        if (cut[r].index == ip.i) posI = r;
        if (cut[r].index == ip.j) posJ = r;
    }
    if (posI == n || posJ == n) {
        throw InvalidInput("bracelet_at: anchor lines are not part of the cut");
    }
    const std::size_t lo = std::min(posI, posJ);
    const std::size_t hi = std::max(posI, posJ);

    std::optional<Bracelet> best;
    auto consider = [&](std::size_t bottom, std::size_t top) {
        Bracelet br{ip.u, cut[bottom].v, cut[top].v, ip, q};
        if (!best || br.height() < best->height() ||
            (br.height() == best->height() && br.vLow < best->vLow)) {
            best = br;
        }
    };
    if (hi + 1 >= q) {
        consider(hi + 1 - q, hi);
    }
    if (lo + q <= n) {
        consider(lo, lo + q - 1);
    }
    return best;
}

}  // namespace lmsline::core
