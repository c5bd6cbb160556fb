/**
 * @file commands.hpp
 * @brief Subcommands of the `lmsline` tool: solve, detect, synth, experiment, bench.
 *
 * Exit codes: 0 success, 1 usage, 2 input error, 3 degenerate data.
 */
#pragma once

#include <lmsline/backend/backend.hpp>
#include <lmsline/core/types.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lmsline::bench {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInput = 2, kExitDegenerate = 3 };

/// Parses and runs one command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Uniform points in [0, 1)^2 for timing runs; fixed by (n, seed).
std::vector<core::Point2> bench_points(std::size_t n, std::uint64_t seed);

struct BenchRow {
    std::size_t size = 0;
    backend::BackendKind backend = backend::BackendKind::Sequential;
    std::size_t workers = 1;
    std::size_t repeats = 1;
    double medianMs = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    double lmsValue = 0.0;
};

/// Median-of-repeats wall time of solve_lms per (size, backend). Sizes must be
/// powers of two in [64, 1024].
std::vector<BenchRow> run_bench(const std::vector<std::size_t>& sizes,
                                const std::vector<backend::BackendKind>& backends,
                                std::size_t repeats, std::size_t workers, std::uint64_t seed);

void write_bench(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace lmsline::bench
