/**
 * @file backend.hpp
 * @brief Execution backends for bracelet candidate evaluation.
 *
 * Phase 1 enumerates the intersections of all non-parallel dual-line pairs
 * (i, j), i < j, in row-major upper-triangle order. Phase 2 evaluates the
 * bracelets anchored at each intersection and min-reduces them by
 * (height, i, j, vLow). The order is total, so the reduced record does not
 * depend on how pairs are partitioned across workers or in which order the
 * partitions finish.
 */
#pragma once

#include <lmsline/core/duality.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace lmsline::backend {

enum class BackendKind { Sequential, Parallel };

struct BackendOptions {
    BackendKind kind = BackendKind::Sequential;
    /// 0 picks LMSLINE_WORKERS from the environment, else the hardware thread count.
    std::size_t workers = 0;
    /// Store every intersection before phase 2 (O(n^2) memory) instead of streaming.
    bool materialize = false;
    /// Pairs per work item handed to a worker.
    std::size_t partitionSize = 4096;
};

/// "seq" or "par"; throws InvalidInput otherwise.
BackendKind parse_backend(std::string_view name);
std::string_view backend_name(BackendKind kind);

/// Worker count the options resolve to (1 for the sequential backend).
std::size_t resolve_workers(const BackendOptions& options);

struct BatchPlan {
    std::size_t n = 0;
    /// Non-parallel pairs only.
    std::size_t pairCount = 0;
    std::size_t partitionSize = 1;
    std::size_t workerCount = 1;
};

BatchPlan make_plan(std::span<const core::DualLine> lines, const BackendOptions& options);

/// Bracelet candidate. Ordered by (height, i, j, vLow).
struct CandidateRecord {
    double height = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    double u = 0.0;
    double vLow = 0.0;
    double vHigh = 0.0;
};

bool operator<(const CandidateRecord& lhs, const CandidateRecord& rhs);
bool operator==(const CandidateRecord& lhs, const CandidateRecord& rhs);

/// Number of pairs (i, j), i < j, among n lines.
constexpr std::size_t total_pairs(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Pair at row-major upper-triangle position `linear` (0-based).
std::pair<std::size_t, std::size_t> pair_at(std::size_t linear, std::size_t n);

/// Calls `sink` for every non-parallel pair whose linear position lies in
/// [begin, end), in order.
void for_each_intersection(std::span<const core::DualLine> lines, std::size_t begin,
                           std::size_t end,
                           const std::function<void(const core::DualIntersection&)>& sink);

/// Phase 1, materialized: every intersection exactly once.
std::vector<core::DualIntersection> run_phase1(std::span<const core::DualLine> lines);

/// Per-worker scratch for evaluate_anchor; reuse across calls to avoid allocation.
struct AnchorScratch {
    std::vector<double> values;
    std::vector<double> work;
};

/// Best anchored bracelet at `ip` as a record, or nullopt when no window fits.
/// Without `bound` this equals core::bracelet_at on the same input, computed
/// with linear-time selection instead of a full sort. With `bound`, windows
/// strictly taller than *bound may be dropped. `lines` is indexed by source
/// index, as returned by core::dualize.
std::optional<CandidateRecord> evaluate_anchor(const core::DualIntersection& ip,
                                               std::span<const core::DualLine> lines,
                                               std::size_t q, AnchorScratch& scratch,
                                               std::optional<double> bound = std::nullopt);

/// Phase 2 over materialized intersections. Throws InternalError when no
/// intersection yields a bracelet.
CandidateRecord run_phase2(std::span<const core::DualIntersection> intersections,
                           std::span<const core::DualLine> lines, std::size_t q,
                           const BackendOptions& options = {});

/// Both phases. Streams intersections into phase 2 unless options.materialize.
CandidateRecord find_min_bracelet(std::span<const core::DualLine> lines, std::size_t q,
                                  const BackendOptions& options = {});

}  // namespace lmsline::backend
