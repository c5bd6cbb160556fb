#include <lmsline/backend/backend.hpp>
#include <lmsline/error.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

namespace lmsline::backend {

using core::DualIntersection;
using core::DualLine;

BackendKind parse_backend(std::string_view name) {
    if (name == "seq") return BackendKind::Sequential;
    if (name == "par") return BackendKind::Parallel;
    throw InvalidInput("unknown backend '" + std::string(name) + "' (expected seq or par)");
}

std::string_view backend_name(BackendKind kind) {
    return kind == BackendKind::Sequential ? "seq" : "par";
}

std::size_t resolve_workers(const BackendOptions& options) {
    if (options.kind == BackendKind::Sequential) return 1;
    if (options.workers > 0) return options.workers;
    if (const char* env = std::getenv("LMSLINE_WORKERS")) {
        std::size_t value = 0;
        const std::string_view text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc{} && ptr == text.data() + text.size() && value > 0) return value;
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

BatchPlan make_plan(std::span<const DualLine> lines, const BackendOptions& options) {
    std::vector<double> slopes;
    slopes.reserve(lines.size());
    for (const auto& l : lines) slopes.push_back(l.a);
    std::sort(slopes.begin(), slopes.end());
    std::size_t parallelPairs = 0;
    for (std::size_t k = 0; k < slopes.size();) {
        std::size_t m = k;
        while (m < slopes.size() && slopes[m] == slopes[k]) ++m;
        parallelPairs += total_pairs(m - k);
        k = m;
    }
    return {lines.size(), total_pairs(lines.size()) - parallelPairs,
            std::max<std::size_t>(1, options.partitionSize), resolve_workers(options)};
}

bool operator<(const CandidateRecord& lhs, const CandidateRecord& rhs) {
    if (lhs.height != rhs.height) return lhs.height < rhs.height;
    if (lhs.i != rhs.i) return lhs.i < rhs.i;
    if (lhs.j != rhs.j) return lhs.j < rhs.j;
    return lhs.vLow < rhs.vLow;
}

bool operator==(const CandidateRecord& lhs, const CandidateRecord& rhs) {
    return lhs.height == rhs.height && lhs.i == rhs.i && lhs.j == rhs.j && lhs.u == rhs.u &&
           lhs.vLow == rhs.vLow && lhs.vHigh == rhs.vHigh;
}

std::pair<std::size_t, std::size_t> pair_at(std::size_t linear, std::size_t n) {
    // Row i starts at i*(2n-i-1)/2.
    auto rowStart = [n](std::size_t i) { return i * (2 * n - i - 1) / 2; };
    std::size_t lo = 0;
    std::size_t hi = n - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (rowStart(mid) <= linear) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {lo, lo + 1 + (linear - rowStart(lo))};
}

void for_each_intersection(std::span<const DualLine> lines, std::size_t begin, std::size_t end,
                           const std::function<void(const DualIntersection&)>& sink) {
    const std::size_t n = lines.size();
    end = std::min(end, total_pairs(n));
    if (begin >= end) return;
    auto [i, j] = pair_at(begin, n);
    for (std::size_t k = begin; k < end; ++k) {
        const DualLine& li = lines[i];
        const DualLine& lj = lines[j];
        if (li.a != lj.a) {
            const double u = (li.b - lj.b) / (li.a - lj.a);
            sink(DualIntersection{u, li.at(u), i, j});
        }
        if (++j == n) {
            ++i;
            j = i + 1;
        }
    }
}

std::vector<DualIntersection> run_phase1(std::span<const DualLine> lines) {
    std::vector<DualIntersection> out;
    for_each_intersection(lines, 0, total_pairs(lines.size()),
                          [&out](const DualIntersection& ip) { out.push_back(ip); });
    return out;
}

std::optional<CandidateRecord> evaluate_anchor(const DualIntersection& ip,
                                               std::span<const DualLine> lines, std::size_t q,
                                               AnchorScratch& scratch,
                                               std::optional<double> bound) {
    const std::size_t n = lines.size();
    if (q < 2 || q > n) return std::nullopt;

    auto& values = scratch.values;
    values.resize(n);
    for (std::size_t k = 0; k < n; ++k) values[k] = lines[k].at(ip.u);

    // Ranks under the (value, index) order used by vertical_cut.
    const double vi = values[ip.i];
    const double vj = values[ip.j];
    std::size_t rankI = 0;
    std::size_t rankJ = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double v = values[k];
        rankI += (v < vi || (v == vi && k < ip.i)) ? 1 : 0;
        rankJ += (v < vj || (v == vj && k < ip.j)) ? 1 : 0;
    }
    const bool iLower = rankI < rankJ;
    const std::size_t lo = iLower ? rankI : rankJ;
    const std::size_t hi = iLower ? rankJ : rankI;
    const std::size_t loLine = iLower ? ip.i : ip.j;
    const std::size_t hiLine = iLower ? ip.j : ip.i;
    const double loVal = values[loLine];
    const double hiVal = values[hiLine];

    bool wantDown = hi + 1 >= q;
    bool wantUp = lo + q <= n;

    if (bound && (wantDown || wantUp)) {
        // A window no taller than *bound keeps all q members within *bound of
        // its anchored end; fewer candidates than q there means strictly taller.
        const double margin = 1e-12 * (std::abs(hiVal) + std::abs(loVal) + *bound) +
                              std::numeric_limits<double>::min();
        const double downFloor = hiVal - *bound - margin;
        const double upCeil = loVal + *bound + margin;
        std::size_t downCount = 0;
        std::size_t upCount = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const double v = values[k];
            downCount += ((v >= downFloor && v < hiVal) || (v == hiVal && k <= hiLine)) ? 1 : 0;
            upCount += ((v <= upCeil && v > loVal) || (v == loVal && k >= loLine)) ? 1 : 0;
        }
        wantDown = wantDown && downCount >= q;
        wantUp = wantUp && upCount >= q;
    }
    if (!wantDown && !wantUp) return std::nullopt;

    auto& work = scratch.work;
    work.assign(values.begin(), values.end());
    auto orderStat = [&work](std::size_t rank) {
        std::nth_element(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(rank), work.end());
        return work[rank];
    };

    std::optional<CandidateRecord> best;
    auto consider = [&](double vLow, double vHigh) {
        CandidateRecord rec{vHigh - vLow, ip.i, ip.j, ip.u, vLow, vHigh};
        if (!best || rec < *best) best = rec;
    };
    if (wantDown) consider(orderStat(hi + 1 - q), hiVal);
    if (wantUp) consider(loVal, orderStat(lo + q - 1));
    return best;
}

namespace {

struct WorkerState {
    AnchorScratch scratch;
    std::optional<CandidateRecord> best;

    void offer(const DualIntersection& ip, std::span<const DualLine> lines, std::size_t q) {
        std::optional<double> bound;
        if (best) bound = best->height;
        const auto rec = evaluate_anchor(ip, lines, q, scratch, bound);
        if (rec && (!best || *rec < *best)) best = rec;
    }
};

// Runs `chunk(c, state)` for every chunk index c in [0, chunkCount) across
// `workers` threads (inline when workers == 1) and min-reduces the states.
template <typename ChunkFn>
CandidateRecord reduce_chunks(std::size_t chunkCount, std::size_t workers, ChunkFn chunk) {
    workers = std::max<std::size_t>(1, std::min(workers, chunkCount));
    std::vector<WorkerState> states(workers);
    if (workers == 1) {
        for (std::size_t c = 0; c < chunkCount; ++c) chunk(c, states[0]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                for (std::size_t c = next.fetch_add(1); c < chunkCount; c = next.fetch_add(1)) {
                    chunk(c, states[w]);
                }
            });
        }
    }
    std::optional<CandidateRecord> best;
    for (const auto& s : states) {
        if (s.best && (!best || *s.best < *best)) best = s.best;
    }
    if (!best) throw InternalError("no valid bracelet for any intersection");
    return *best;
}

std::size_t chunks_for(std::size_t items, std::size_t partition) {
    return (items + partition - 1) / partition;
}

}  // namespace

CandidateRecord run_phase2(std::span<const DualIntersection> intersections,
                           std::span<const DualLine> lines, std::size_t q,
                           const BackendOptions& options) {
    const std::size_t partition = std::max<std::size_t>(1, options.partitionSize);
    return reduce_chunks(chunks_for(intersections.size(), partition), resolve_workers(options),
                         [&](std::size_t c, WorkerState& state) {
                             const std::size_t begin = c * partition;
                             const std::size_t end =
                                 std::min(begin + partition, intersections.size());
                             for (std::size_t k = begin; k < end; ++k) {
                                 state.offer(intersections[k], lines, q);
                             }
                         });
}

CandidateRecord find_min_bracelet(std::span<const DualLine> lines, std::size_t q,
                                  const BackendOptions& options) {
    if (options.materialize) {
        const auto intersections = run_phase1(lines);
        return run_phase2(intersections, lines, q, options);
    }
    const std::size_t partition = std::max<std::size_t>(1, options.partitionSize);
    return reduce_chunks(chunks_for(total_pairs(lines.size()), partition),
                         resolve_workers(options), [&](std::size_t c, WorkerState& state) {
                             for_each_intersection(lines, c * partition, (c + 1) * partition,
                                                   [&](const DualIntersection& ip) {
                                                       state.offer(ip, lines, q);
                                                   });
                         });
}

}  // namespace lmsline::backend
