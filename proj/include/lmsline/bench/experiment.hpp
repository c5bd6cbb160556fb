/**
 * @file experiment.hpp
 * @brief Synthetic line-detection experiments comparing SHT, OLS and LMS.
 *
 * Every (seed, noise, bins, method) cell renders one synthetic image whose
 * line is drawn from the seed, runs the detection pipeline with one peak, and
 * scores the detection against the ground truth:
 *   - slopeErrorPct: |s_est - s| / |s| * 100 in the image frame
 *     (|s_est| * 100 when the true slope is 0),
 *   - interceptError: |c_est - c| in pixels,
 *   - pixelSeparationError: mean |est - truth| along the minor axis over the
 *     truth segment (vertical separation for |s| <= 1, horizontal otherwise).
 */
#pragma once

#include <lmsline/backend/backend.hpp>
#include <lmsline/detect/line_detect.hpp>
#include <lmsline/imaging/synthetic.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lmsline::bench {

struct BinSize {
    double deltaRho = 20.0;
    double deltaThetaDeg = 20.0;
};

struct ExperimentConfig {
    /// "resolution", "noise" or "compare".
    std::string name = "compare";
    std::vector<std::uint64_t> seeds;
    std::vector<double> noiseLevels;
    std::vector<BinSize> bins;
    std::vector<detect::Method> methods;
    std::string outputPath;
    double samplingProb = 0.5;
    int width = 1024;
    int height = 1024;
    backend::BackendOptions backend;

    /// Throws InvalidInput for an unknown name or an empty list.
    void validate() const;
};

/// Defaults for a named experiment: 20 seeds (1..20), all three methods and
///   resolution: noise 0.001, bins (d, d) for d in {2, 5, 10, 20}
///   noise:      noise {0.0005, 0.001, 0.002, 0.004, 0.006}, bins (20, 20)
///   compare:    noise 0.001, bins (20, 20)
ExperimentConfig default_config(const std::string& name);

/// Reads a JSON object; absent keys keep the named defaults. Keys: name,
/// seeds (array or count), noise, bins ([[drho, dtheta], ...]), methods,
/// output, sampling, width, height. Throws ParseError on malformed input.
ExperimentConfig parse_config(std::string_view json);

struct MetricRow {
    std::uint64_t seed = 0;
    double noiseProb = 0.0;
    double deltaRho = 0.0;
    double deltaThetaDeg = 0.0;
    detect::Method method = detect::Method::LMS;
    bool detected = false;
    std::size_t supportCount = 0;
    double slopeErrorPct = 0.0;
    double interceptError = 0.0;
    double pixelSeparationError = 0.0;
    double runtimeMs = 0.0;
};

/// Seeded random line through the central half of the image, direction within
/// 25..65 degrees of the x-axis (either diagonal).
imaging::Segment random_line(std::uint64_t seed, int width, int height);

imaging::SyntheticSpec synthetic_spec(std::uint64_t seed, double noiseProb, double samplingProb,
                                      int width, int height);

struct LineErrors {
    double slopeErrorPct = 0.0;
    double interceptError = 0.0;
    double pixelSeparationError = 0.0;
};

LineErrors line_errors(const core::LineEq& estimate, const imaging::GroundTruth& truth);

/// One row per (seed x noise x bins x method), in that nesting order.
std::vector<MetricRow> run_experiment(const ExperimentConfig& config);

struct SummaryRow {
    double noiseProb = 0.0;
    double deltaRho = 0.0;
    double deltaThetaDeg = 0.0;
    detect::Method method = detect::Method::LMS;
    std::size_t runs = 0;
    std::size_t detected = 0;
    double meanSlopeErrorPct = 0.0;
    double stdSlopeErrorPct = 0.0;
    double meanInterceptError = 0.0;
    double meanPixelSeparation = 0.0;
    double stdPixelSeparation = 0.0;
};

/// Mean and sample standard deviation over seeds for each (noise, bins,
/// method) cell; undetected runs are counted but excluded from the means.
std::vector<SummaryRow> summarize(const std::vector<MetricRow>& rows);

void write_metrics(std::ostream& out, const std::vector<MetricRow>& rows, bool includeTiming = true);
void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace lmsline::bench
