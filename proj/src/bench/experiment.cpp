#include <lmsline/bench/experiment.hpp>
#include <lmsline/error.hpp>
#include <lmsline/io/csv.hpp>

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <tuple>

namespace lmsline::bench {

using detect::Method;

namespace {

constexpr std::uint32_t kLineStream = 3;

std::vector<std::uint64_t> seed_range(std::uint64_t count) {
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= count; ++s) seeds.push_back(s);
    return seeds;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (name != "resolution" && name != "noise" && name != "compare") {
        throw InvalidInput("unknown experiment '" + name + "' (expected resolution, noise or compare)");
    }
    if (seeds.empty()) throw InvalidInput("experiment needs at least one seed");
    if (noiseLevels.empty()) throw InvalidInput("experiment needs at least one noise level");
    if (bins.empty()) throw InvalidInput("experiment needs at least one bin size");
    if (methods.empty()) throw InvalidInput("experiment needs at least one method");
    for (double p : noiseLevels) {
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("noise level outside [0, 1]");
    }
    for (const auto& b : bins) {
        if (!(b.deltaRho > 0.0) || !(b.deltaThetaDeg > 0.0)) throw InvalidInput("bin sizes must be positive");
    }
}

ExperimentConfig default_config(const std::string& name) {
    ExperimentConfig cfg;
    cfg.name = name;
    cfg.seeds = seed_range(20);
    cfg.methods = {Method::SHT, Method::OLS, Method::LMS};
    if (name == "resolution") {
        cfg.noiseLevels = {0.001};
        cfg.bins = {{2, 2}, {5, 5}, {10, 10}, {20, 20}};
    } else if (name == "noise") {
        cfg.noiseLevels = {0.0005, 0.001, 0.002, 0.004, 0.006};
        cfg.bins = {{20, 20}};
    } else if (name == "compare") {
        cfg.noiseLevels = {0.001};
        cfg.bins = {{20, 20}};
    } else {
        throw InvalidInput("unknown experiment '" + name + "' (expected resolution, noise or compare)");
    }
    return cfg;
}

ExperimentConfig parse_config(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what(), e.byte);
    }
    if (!doc.is_object()) throw ParseError("config: expected a JSON object", 0);
    try {
        ExperimentConfig cfg = default_config(doc.value("name", std::string("compare")));
        if (doc.contains("seeds")) {
            const auto& seeds = doc.at("seeds");
            cfg.seeds = seeds.is_number() ? seed_range(seeds.get<std::uint64_t>())
                                          : seeds.get<std::vector<std::uint64_t>>();
        }
        if (doc.contains("noise")) cfg.noiseLevels = doc.at("noise").get<std::vector<double>>();
        if (doc.contains("bins")) {
            cfg.bins.clear();
            for (const auto& pair : doc.at("bins")) {
                const auto v = pair.get<std::vector<double>>();
                if (v.size() != 2) throw ParseError("config: each bin is [drho, dtheta]", 0);
                cfg.bins.push_back({v[0], v[1]});
            }
        }
        if (doc.contains("methods")) {
            cfg.methods.clear();
            for (const auto& m : doc.at("methods")) cfg.methods.push_back(detect::parse_method(m.get<std::string>()));
        }
        cfg.outputPath = doc.value("output", cfg.outputPath);
        cfg.samplingProb = doc.value("sampling", cfg.samplingProb);
        cfg.width = doc.value("width", cfg.width);
        cfg.height = doc.value("height", cfg.height);
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("config: ") + e.what(), 0);
    }
}

imaging::Segment random_line(std::uint64_t seed, int width, int height) {
    auto rng = imaging::make_stream(seed, kLineStream);
    const double cx = width * (0.25 + 0.5 * imaging::uniform01(rng));
    const double cy = height * (0.25 + 0.5 * imaging::uniform01(rng));
    double angle = 25.0 + 40.0 * imaging::uniform01(rng);
    if (imaging::uniform01(rng) < 0.5) angle = 180.0 - angle;
    const double rad = angle * std::numbers::pi / 180.0;
    const double reach = 2.0 * std::hypot(double(width), double(height));
    return {{cx - reach * std::cos(rad), cy - reach * std::sin(rad)},
            {cx + reach * std::cos(rad), cy + reach * std::sin(rad)}};
}

imaging::SyntheticSpec synthetic_spec(std::uint64_t seed, double noiseProb, double samplingProb,
                                      int width, int height) {
    imaging::SyntheticSpec spec;
    spec.width = width;
    spec.height = height;
    spec.line = random_line(seed, width, height);
    spec.samplingProb = samplingProb;
    spec.noiseProb = noiseProb;
    spec.seed = seed;
    return spec;
}

LineErrors line_errors(const core::LineEq& estimate, const imaging::GroundTruth& truth) {
    if (!truth.line) throw InvalidInput("ground truth is vertical; slope error undefined");
    const double s = truth.line->slope;
    const double c = truth.line->intercept;
    LineErrors err;
    err.slopeErrorPct = s == 0.0 ? std::abs(estimate.slope) * 100.0
                                 : std::abs(estimate.slope - s) / std::abs(s) * 100.0;
    err.interceptError = std::abs(estimate.intercept - c);

    const auto& seg = truth.segment;
    double sum = 0.0;
    std::size_t count = 0;
    if (std::abs(s) <= 1.0) {
        const double lo = std::ceil(std::min(seg.p0.x, seg.p1.x));
        const double hi = std::floor(std::max(seg.p0.x, seg.p1.x));
        for (double x = lo; x <= hi; x += 1.0, ++count) sum += std::abs(estimate.at(x) - truth.line->at(x));
    } else {
        const double lo = std::ceil(std::min(seg.p0.y, seg.p1.y));
        const double hi = std::floor(std::max(seg.p0.y, seg.p1.y));
        for (double y = lo; y <= hi; y += 1.0, ++count) {
            sum += std::abs((y - estimate.intercept) / estimate.slope - (y - c) / s);
        }
    }
    err.pixelSeparationError = count ? sum / double(count) : 0.0;
    return err;
}

std::vector<MetricRow> run_experiment(const ExperimentConfig& config) {
    config.validate();
    std::vector<MetricRow> rows;
    for (const auto seed : config.seeds) {
        for (const double noise : config.noiseLevels) {
            const auto spec = synthetic_spec(seed, noise, config.samplingProb, config.width, config.height);
            const auto synth = imaging::gen_synthetic(spec);
            const auto points = detect::extract_points(synth.image);
            for (const auto& bin : config.bins) {
                detect::HoughParams params{bin.deltaRho, bin.deltaThetaDeg, config.width, config.height};
                for (const auto method : config.methods) {
                    MetricRow row;
                    row.seed = seed;
                    row.noiseProb = noise;
                    row.deltaRho = bin.deltaRho;
                    row.deltaThetaDeg = bin.deltaThetaDeg;
                    row.method = method;

                    const auto start = std::chrono::steady_clock::now();
                    const auto acc = detect::hough_vote(points, params);
                    const auto peaks = detect::find_peaks(acc, 1, 3);
                    std::optional<detect::LineDetection> det;
                    if (!peaks.empty()) det = detect::refine_peak(points, acc, peaks.front(), method, config.backend);
                    const auto stop = std::chrono::steady_clock::now();
                    row.runtimeMs = std::chrono::duration<double, std::milli>(stop - start).count();

                    if (det) {
                        row.detected = true;
                        row.supportCount = det->support.size();
                        const auto err = line_errors(det->image_line(), synth.truth);
                        row.slopeErrorPct = err.slopeErrorPct;
                        row.interceptError = err.interceptError;
                        row.pixelSeparationError = err.pixelSeparationError;
                    } else {
                        row.slopeErrorPct = row.interceptError = row.pixelSeparationError =
                            std::numeric_limits<double>::quiet_NaN();
                    }
                    rows.push_back(row);
                }
            }
        }
    }
    return rows;
}

std::vector<SummaryRow> summarize(const std::vector<MetricRow>& rows) {
    using Key = std::tuple<double, double, double, int>;
    std::map<Key, std::vector<const MetricRow*>> cells;
    std::vector<Key> order;
    for (const auto& r : rows) {
        const Key key{r.noiseProb, r.deltaRho, r.deltaThetaDeg, static_cast<int>(r.method)};
        auto [it, inserted] = cells.try_emplace(key);
        if (inserted) order.push_back(key);
        it->second.push_back(&r);
    }
    std::vector<SummaryRow> out;
    for (const auto& key : order) {
        const auto& members = cells.at(key);
        SummaryRow s;
        std::tie(s.noiseProb, s.deltaRho, s.deltaThetaDeg, std::ignore) = key;
        s.method = members.front()->method;
        s.runs = members.size();
        std::vector<double> slope;
        std::vector<double> sep;
        double interceptSum = 0.0;
        for (const auto* r : members) {
            if (!r->detected) continue;
            ++s.detected;
            slope.push_back(r->slopeErrorPct);
            sep.push_back(r->pixelSeparationError);
            interceptSum += r->interceptError;
        }
        auto meanStd = [](const std::vector<double>& v) {
            if (v.empty()) return std::pair{std::numeric_limits<double>::quiet_NaN(), 0.0};
            double m = 0.0;
            for (double x : v) m += x;
            m /= double(v.size());
            double ss = 0.0;
            for (double x : v) ss += (x - m) * (x - m);
            return std::pair{m, v.size() > 1 ? std::sqrt(ss / double(v.size() - 1)) : 0.0};
        };
        std::tie(s.meanSlopeErrorPct, s.stdSlopeErrorPct) = meanStd(slope);
        std::tie(s.meanPixelSeparation, s.stdPixelSeparation) = meanStd(sep);
        s.meanInterceptError = s.detected ? interceptSum / double(s.detected)
                                          : std::numeric_limits<double>::quiet_NaN();
        out.push_back(s);
    }
    return out;
}

void write_metrics(std::ostream& out, const std::vector<MetricRow>& rows, bool includeTiming) {
    using io::format_double;
    out << "seed,noise,drho,dtheta,method,detected,support_count,slope_error_pct,intercept_error,"
           "pixel_separation_error";
    if (includeTiming) out << ",runtime_ms";
    out << '\n';
    for (const auto& r : rows) {
        out << r.seed << ',' << format_double(r.noiseProb) << ',' << format_double(r.deltaRho) << ','
            << format_double(r.deltaThetaDeg) << ',' << detect::method_name(r.method) << ','
            << (r.detected ? 1 : 0) << ',' << r.supportCount << ',' << format_double(r.slopeErrorPct)
            << ',' << format_double(r.interceptError) << ',' << format_double(r.pixelSeparationError);
        if (includeTiming) out << ',' << format_double(r.runtimeMs);
        out << '\n';
    }
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
    using io::format_double;
    out << "noise,drho,dtheta,method,runs,detected,mean_slope_error_pct,std_slope_error_pct,"
           "mean_intercept_error,mean_pixel_separation,std_pixel_separation\n";
    for (const auto& s : rows) {
        out << format_double(s.noiseProb) << ',' << format_double(s.deltaRho) << ','
            << format_double(s.deltaThetaDeg) << ',' << detect::method_name(s.method) << ',' << s.runs
            << ',' << s.detected << ',' << format_double(s.meanSlopeErrorPct) << ','
            << format_double(s.stdSlopeErrorPct) << ',' << format_double(s.meanInterceptError) << ','
            << format_double(s.meanPixelSeparation) << ',' << format_double(s.stdPixelSeparation) << '\n';
    }
}

}  // namespace lmsline::bench
