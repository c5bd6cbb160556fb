/**
 * @file lms.hpp
 * @brief Exact 2D least-median-of-squares line fitting.
 */
#pragma once

#include <lmsline/backend/backend.hpp>
#include <lmsline/core/duality.hpp>
#include <lmsline/core/types.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace lmsline::core {

/// Result of an LMS fit. The line bisects the thinnest slab holding `coverage`
/// points; lmsValue is the coverage-th smallest squared residual.
struct LmsFit {
    LineEq line;
    double lmsValue = 0.0;
    double slabHeight = 0.0;
    std::size_t coverage = 0;
    /// Points on either slab boundary, ascending.
    std::vector<std::size_t> contactIndices;
    /// Minimal bracelet the fit was read from.
    Bracelet bracelet;
};

/// floor(n/2) + 1.
std::size_t default_coverage(std::size_t n);

/// Exact LMS via the equioscillation property: every bracelet anchored at a
/// dual intersection is evaluated and the minimum (height, i, j, vLow) wins.
///
/// Throws DegenerateInput for n < 3 or fewer than two distinct x-coordinates,
/// InvalidInput for a non-finite point or q outside [2, n].
LmsFit solve_lms(std::span<const Point2> points, std::optional<std::size_t> q = std::nullopt,
                 const backend::BackendOptions& options = {});

/// Brute-force reference: every pairwise slope, every window of q sorted
/// intercepts. Same preconditions, errors and tie-break as solve_lms.
LmsFit oracle_lms(std::span<const Point2> points, std::size_t q);

/// q-th smallest squared residual of the points about `line` (1-based q).
double median_sq_residual(std::span<const Point2> points, const LineEq& line, std::size_t q);

/// Indices whose |residual| equals half the slab height within tolerance.
std::vector<std::size_t> slab_contacts(std::span<const Point2> points, const LineEq& line,
                                       double halfHeight);

}  // namespace lmsline::core
