#include <lmsline/bench/commands.hpp>
#include <lmsline/bench/experiment.hpp>
#include <lmsline/core/lms.hpp>
#include <lmsline/detect/line_detect.hpp>
#include <lmsline/error.hpp>
#include <lmsline/imaging/pgm.hpp>
#include <lmsline/imaging/synthetic.hpp>
#include <lmsline/io/csv.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <fstream>
#include <functional>
#include <iterator>
#include <memory>
#include <ostream>

namespace lmsline::bench {

namespace {

// Writes to --output when given, else to the command's stdout.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw InvalidInput("cannot open " + path + " for writing");
        }
        stream_ = file_ ? file_.get() : &fallback;
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

struct BackendFlags {
    std::string backend = "seq";
    std::size_t workers = 0;
    bool materialize = false;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--backend", backend, "Execution backend")->check(CLI::IsMember({"seq", "par"}));
        cmd->add_option("--workers", workers, "Worker threads for --backend par (0: auto)");
        cmd->add_flag("--materialize", materialize, "Store all intersections before evaluation");
    }
    backend::BackendOptions options() const {
        backend::BackendOptions opts;
        opts.kind = backend::parse_backend(backend);
        opts.workers = workers;
        opts.materialize = materialize;
        return opts;
    }
};

const auto kMethodCheck = CLI::IsMember({"SHT", "OLS", "LMS"}, CLI::ignore_case);

}  // namespace

std::vector<core::Point2> bench_points(std::size_t n, std::uint64_t seed) {
    auto rng = imaging::make_stream(seed, 5);
    std::vector<core::Point2> pts(n);
    for (auto& p : pts) {
        p.x = imaging::uniform01(rng);
        p.y = imaging::uniform01(rng);
    }
    return pts;
}

std::vector<BenchRow> run_bench(const std::vector<std::size_t>& sizes,
                                const std::vector<backend::BackendKind>& backends,
                                std::size_t repeats, std::size_t workers, std::uint64_t seed) {
    if (repeats < 1) throw InvalidInput("repeats must be at least 1");
    for (auto n : sizes) {
        if (n < 64 || n > 1024 || !std::has_single_bit(n)) {
            throw InvalidInput("bench sizes must be powers of two in [64, 1024], got " + std::to_string(n));
        }
    }
    std::vector<BenchRow> rows;
    for (const auto n : sizes) {
        const auto pts = bench_points(n, seed);
        for (const auto kind : backends) {
            backend::BackendOptions opts;
            opts.kind = kind;
            opts.workers = workers;
            std::vector<double> times;
            core::LmsFit fit;
            for (std::size_t r = 0; r < repeats; ++r) {
                const auto start = std::chrono::steady_clock::now();
                fit = core::solve_lms(pts, std::nullopt, opts);
                times.push_back(std::chrono::duration<double, std::milli>(
                                    std::chrono::steady_clock::now() - start).count());
            }
            std::sort(times.begin(), times.end());
            const double median = times.size() % 2 ? times[times.size() / 2]
                                                   : 0.5 * (times[times.size() / 2 - 1] + times[times.size() / 2]);
            rows.push_back({n, kind, backend::resolve_workers(opts), repeats, median, fit.line.slope,
                            fit.line.intercept, fit.lmsValue});
        }
    }
    return rows;
}

void write_bench(std::ostream& out, const std::vector<BenchRow>& rows) {
    using io::format_double;
    out << "size,backend,workers,repeats,median_ms,slope,intercept,lms_value\n";
    for (const auto& r : rows) {
        out << r.size << ',' << backend::backend_name(r.backend) << ',' << r.workers << ',' << r.repeats
            << ',' << format_double(r.medianMs) << ',' << format_double(r.slope) << ','
            << format_double(r.intercept) << ',' << format_double(r.lmsValue) << '\n';
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact least-median-of-squares line fitting and robust Hough line detection", "lmsline"};
    app.require_subcommand(1);
    std::function<void()> action;

    // solve
    auto* solve = app.add_subcommand("solve", "Fit an LMS line to a CSV point set (header x,y)");
    std::string solveInput;
    std::string solveOutput;
    std::size_t solveQ = 0;
    BackendFlags solveBackend;
    solve->add_option("--input", solveInput, "Point CSV")->required();
    solve->add_option("--output", solveOutput, "Fit CSV (default: stdout)");
    solve->add_option("--q", solveQ, "Coverage (default floor(n/2)+1)");
    solveBackend.add_to(solve);
    solve->callback([&] {
        action = [&] {
            const auto points = io::read_points_csv(solveInput);
            std::optional<std::size_t> q;
            if (solveQ > 0) q = solveQ;
            const auto fit = core::solve_lms(points, q, solveBackend.options());
            Sink sink(solveOutput, out);
            *sink << io::kFitHeader << '\n';
            io::write_fit_row(*sink, fit);
        };
    });

    // detect
    auto* detectCmd = app.add_subcommand("detect", "Detect lines in a binary PGM image");
    std::string detectInput;
    std::string detectOutput;
    std::string detectMethod = "LMS";
    detect::DetectOptions detectOpts;
    std::size_t maxPeaks = 1;
    BackendFlags detectBackend;
    detectCmd->add_option("--input", detectInput, "PGM (P5) image")->required();
    detectCmd->add_option("--output", detectOutput, "Detections CSV (default: stdout)");
    detectCmd->add_option("--drho", detectOpts.hough.deltaRho, "Rho bin size in pixels");
    detectCmd->add_option("--dtheta", detectOpts.hough.deltaThetaDeg, "Theta bin size in degrees");
    detectCmd->add_option("--method", detectMethod, "SHT, OLS or LMS")->check(kMethodCheck);
    detectCmd->add_option("--max-peaks", maxPeaks, "Number of peaks to refine")->check(CLI::PositiveNumber);
    detectCmd->add_option("--min-votes", detectOpts.minVotes, "Minimum votes for a peak");
    detectCmd->add_option("--threshold", detectOpts.threshold, "Feature intensity threshold");
    detectBackend.add_to(detectCmd);
    detectCmd->callback([&] {
        action = [&] {
            const auto image = imaging::read_pgm(detectInput);
            detectOpts.method = detect::parse_method(detectMethod);
            detectOpts.maxPeaks = maxPeaks;
            detectOpts.backend = detectBackend.options();
            const auto detections = detect::detect_lines(image, detectOpts);
            Sink sink(detectOutput, out);
            io::write_detections(*sink, detections);
        };
    });

    // synth
    auto* synth = app.add_subcommand("synth", "Render a synthetic single-line image with ground truth");
    std::string synthOutput;
    std::string synthTruth;
    std::uint64_t synthSeed = 1;
    double synthNoise = 0.001;
    double synthSampling = 0.5;
    int synthWidth = 1024;
    int synthHeight = 1024;
    std::vector<double> synthSegment;
    synth->add_option("--output", synthOutput, "PGM path")->required();
    synth->add_option("--truth", synthTruth, "Ground-truth CSV (default: <output>.truth.csv)");
    synth->add_option("--seed", synthSeed, "Random seed");
    synth->add_option("--noise", synthNoise, "Noise pixel probability")->check(CLI::Range(0.0, 1.0));
    synth->add_option("--sampling", synthSampling, "Line pixel probability")->check(CLI::Range(0.0, 1.0));
    synth->add_option("--width", synthWidth)->check(CLI::PositiveNumber);
    synth->add_option("--height", synthHeight)->check(CLI::PositiveNumber);
    synth->add_option("--segment", synthSegment, "x0,y0,x1,y1 (default: random line from the seed)")
        ->delimiter(',')
        ->expected(4);
    synth->callback([&] {
        action = [&] {
            auto spec = synthetic_spec(synthSeed, synthNoise, synthSampling, synthWidth, synthHeight);
            if (!synthSegment.empty()) {
                spec.line = imaging::Segment{{synthSegment[0], synthSegment[1]}, {synthSegment[2], synthSegment[3]}};
            }
            const auto result = imaging::gen_synthetic(spec);
            imaging::write_pgm(synthOutput, result.image);
            imaging::write_ground_truth(synthTruth.empty() ? synthOutput + ".truth.csv" : synthTruth, spec,
                                        result.truth);
            out << "line_pixels=" << result.truth.linePixels.size()
                << " noise_pixels=" << result.truth.noisePixels.size() << '\n';
        };
    });

    // experiment
    auto* experiment = app.add_subcommand("experiment", "Run a synthetic accuracy experiment");
    std::string expName = "compare";
    std::string expConfig;
    std::string expOutput;
    std::string expSummary;
    std::uint64_t expSeeds = 0;
    std::vector<double> expNoise;
    std::vector<double> expDrho;
    std::vector<double> expDtheta;
    std::vector<std::string> expMethods;
    bool expNoTiming = false;
    BackendFlags expBackend;
    experiment->add_option("name", expName, "resolution, noise or compare")
        ->check(CLI::IsMember({"resolution", "noise", "compare"}));
    experiment->add_option("--config", expConfig, "JSON config file");
    experiment->add_option("--output", expOutput, "Metrics CSV (default: stdout)");
    experiment->add_option("--summary", expSummary, "Summary CSV (mean/std per cell)");
    experiment->add_option("--seed", expSeeds, "Number of seeds (1..N)");
    experiment->add_option("--noise", expNoise, "Noise levels")->delimiter(',');
    experiment->add_option("--drho", expDrho, "Rho bin sizes, paired with --dtheta")->delimiter(',');
    experiment->add_option("--dtheta", expDtheta, "Theta bin sizes")->delimiter(',');
    experiment->add_option("--method", expMethods, "Methods")->delimiter(',')->check(kMethodCheck);
    experiment->add_flag("--no-timing", expNoTiming, "Omit the runtime column");
    expBackend.add_to(experiment);
    experiment->callback([&] {
        action = [&] {
            ExperimentConfig cfg = default_config(expName);
            if (!expConfig.empty()) {
                std::ifstream in(expConfig, std::ios::binary);
                if (!in) throw InvalidInput("cannot open " + expConfig);
                cfg = parse_config(std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>()));
            }
            if (expSeeds > 0) {
                cfg.seeds.clear();
                for (std::uint64_t s = 1; s <= expSeeds; ++s) cfg.seeds.push_back(s);
            }
            if (!expNoise.empty()) cfg.noiseLevels = expNoise;
            if (!expDrho.empty() || !expDtheta.empty()) {
                if (expDrho.size() != expDtheta.size()) throw InvalidInput("--drho and --dtheta need the same length");
                cfg.bins.clear();
                for (std::size_t k = 0; k < expDrho.size(); ++k) cfg.bins.push_back({expDrho[k], expDtheta[k]});
            }
            if (!expMethods.empty()) {
                cfg.methods.clear();
                for (const auto& m : expMethods) cfg.methods.push_back(detect::parse_method(m));
            }
            if (!expOutput.empty()) cfg.outputPath = expOutput;
            cfg.backend = expBackend.options();
            const auto rows = run_experiment(cfg);
            Sink sink(cfg.outputPath, out);
            write_metrics(*sink, rows, !expNoTiming);
            if (!expSummary.empty()) {
                Sink summary(expSummary, out);
                write_summary(*summary, summarize(rows));
            }
        };
    });

    // bench
    auto* benchCmd = app.add_subcommand("bench", "Time solve_lms per input size and backend");
    std::vector<std::size_t> benchSizes{64, 128, 256, 512};
    std::vector<std::string> benchBackends{"seq", "par"};
    std::size_t benchRepeats = 3;
    std::size_t benchWorkers = 0;
    std::uint64_t benchSeed = 1;
    std::string benchOutput;
    benchCmd->add_option("--sizes", benchSizes, "Point counts (powers of two, 64..1024)")->delimiter(',');
    benchCmd->add_option("--backend", benchBackends, "Backends")->delimiter(',')->check(CLI::IsMember({"seq", "par"}));
    benchCmd->add_option("--repeats", benchRepeats, "Timed runs per cell")->check(CLI::PositiveNumber);
    benchCmd->add_option("--workers", benchWorkers, "Worker threads for par (0: auto)");
    benchCmd->add_option("--seed", benchSeed, "Point set seed");
    benchCmd->add_option("--output", benchOutput, "Timing CSV (default: stdout)");
    benchCmd->callback([&] {
        action = [&] {
            std::vector<backend::BackendKind> kinds;
            for (const auto& b : benchBackends) kinds.push_back(backend::parse_backend(b));
            const auto rows = run_bench(benchSizes, kinds, benchRepeats, benchWorkers, benchSeed);
            Sink sink(benchOutput, out);
            write_bench(*sink, rows);
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        action();
    } catch (const DegenerateInput& e) {
        err << "error: degenerate input: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}

}  // namespace lmsline::bench
