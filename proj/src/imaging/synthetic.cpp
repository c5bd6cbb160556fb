#include <lmsline/imaging/synthetic.hpp>
#include <lmsline/error.hpp>
#include <lmsline/io/csv.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

namespace lmsline::imaging {

using core::LineEq;
using core::Point2;

namespace {

// Liang-Barsky clip of p0 + t*(p1 - p0), t in [tMin, tMax], to the box.
std::optional<Segment> clip(Point2 p0, Point2 p1, double tMin, double tMax, double xMax,
                            double yMax) {
    const double dx = p1.x - p0.x;
    const double dy = p1.y - p0.y;
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {p0.x, xMax - p0.x, p0.y, yMax - p0.y};
    for (int k = 0; k < 4; ++k) {
        if (p[k] == 0.0) {
            if (q[k] < 0.0) return std::nullopt;
            continue;
        }
        const double t = q[k] / p[k];
        if (p[k] < 0.0) {
            tMin = std::max(tMin, t);
        } else {
            tMax = std::min(tMax, t);
        }
    }
    if (tMin > tMax) return std::nullopt;
    return Segment{{p0.x + tMin * dx, p0.y + tMin * dy}, {p0.x + tMax * dx, p0.y + tMax * dy}};
}

std::vector<PixelXY> rasterize(const Segment& s) {
    std::vector<PixelXY> out;
    const double dx = s.p1.x - s.p0.x;
    const double dy = s.p1.y - s.p0.y;
    if (std::abs(dx) >= std::abs(dy)) {
        if (dx == 0.0) {
            out.push_back({static_cast<int>(std::lround(s.p0.x)), static_cast<int>(std::lround(s.p0.y))});
            return out;
        }
        const double lo = std::min(s.p0.x, s.p1.x);
        const double hi = std::max(s.p0.x, s.p1.x);
        for (auto x = static_cast<long>(std::ceil(lo)); x <= static_cast<long>(std::floor(hi)); ++x) {
            const double y = s.p0.y + (static_cast<double>(x) - s.p0.x) * dy / dx;
            out.push_back({static_cast<int>(x), static_cast<int>(std::lround(y))});
        }
    } else {
        const double lo = std::min(s.p0.y, s.p1.y);
        const double hi = std::max(s.p0.y, s.p1.y);
        for (auto y = static_cast<long>(std::ceil(lo)); y <= static_cast<long>(std::floor(hi)); ++y) {
            const double x = s.p0.x + (static_cast<double>(y) - s.p0.y) * dx / dy;
            out.push_back({static_cast<int>(std::lround(x)), static_cast<int>(y)});
        }
    }
    return out;
}

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidInput(std::string(name) + " must lie in [0, 1]");
    }
}

}  // namespace

double uniform01(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32), stream};
    return std::mt19937_64(seq);
}

std::pair<double, double> polar_of_segment(const Point2& p0, const Point2& p1) {
    const double dx = p1.x - p0.x;
    const double dy = p1.y - p0.y;
    const double len = std::hypot(dx, dy);
    if (len == 0.0) throw InvalidInput("degenerate segment has no direction");
    // Unit normal (-dy, dx), flipped so that theta lands in [0, 180).
    double nx = -dy / len;
    double ny = dx / len;
    if (ny < 0.0 || (ny == 0.0 && nx < 0.0)) {
        nx = -nx;
        ny = -ny;
    }
    double theta = std::atan2(ny, nx) * 180.0 / std::numbers::pi;
    if (theta >= 180.0) theta -= 180.0;
    return {p0.x * nx + p0.y * ny, theta};
}

SyntheticImage gen_synthetic(const SyntheticSpec& spec) {
    check_probability(spec.samplingProb, "samplingProb");
    check_probability(spec.noiseProb, "noiseProb");
    if (spec.width <= 0 || spec.height <= 0) throw InvalidInput("image size must be positive");

    const double xMax = spec.width - 1;
    const double yMax = spec.height - 1;
    std::optional<Segment> clipped;
    if (const auto* seg = std::get_if<Segment>(&spec.line)) {
        if (!core::is_finite(seg->p0) || !core::is_finite(seg->p1)) {
            throw InvalidInput("segment endpoints must be finite");
        }
        clipped = clip(seg->p0, seg->p1, 0.0, 1.0, xMax, yMax);
    } else {
        const auto& eq = std::get<LineEq>(spec.line);
        // Parametrize over x in [0, xMax] and extend; the box clip trims it.
        const double big = 4.0 * (xMax + yMax + 1.0);
        clipped = clip({-big, eq.at(-big)}, {xMax + big, eq.at(xMax + big)}, 0.0, 1.0, xMax, yMax);
    }
    if (!clipped) throw InvalidInput("line does not intersect the image");

    SyntheticImage result{GrayImage(spec.width, spec.height), {}};
    GroundTruth& truth = result.truth;
    truth.segment = *clipped;
    truth.seed = spec.seed;
    truth.raster = rasterize(*clipped);
    if (truth.raster.empty()) throw InvalidInput("line does not cover any pixel center");

    if (const auto* eq = std::get_if<LineEq>(&spec.line)) {
        truth.line = *eq;
    } else if (clipped->p1.x != clipped->p0.x) {
        const double slope = (clipped->p1.y - clipped->p0.y) / (clipped->p1.x - clipped->p0.x);
        truth.line = LineEq{slope, clipped->p0.y - slope * clipped->p0.x};
    }
    if (clipped->p0 == clipped->p1) {
        // Single-pixel segment: keep the direction of the unclipped input.
        const auto& seg = std::get<Segment>(spec.line);
        std::tie(truth.rho, truth.thetaDeg) = polar_of_segment(seg.p0, seg.p1);
    } else {
        std::tie(truth.rho, truth.thetaDeg) = polar_of_segment(clipped->p0, clipped->p1);
    }

    GrayImage& image = result.image;
    std::vector<std::uint8_t> onRaster(image.pixels().size(), 0);
    auto sampling = make_stream(spec.seed, 1);
    for (const auto& px : truth.raster) {
        onRaster[static_cast<std::size_t>(px.y) * spec.width + px.x] = 1;
        if (uniform01(sampling) < spec.samplingProb) {
            image.at(px.x, px.y) = 255;
            truth.linePixels.push_back(px);
        }
    }

    auto noise = make_stream(spec.seed, 2);
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            const bool set = uniform01(noise) < spec.noiseProb;
            if (set && !onRaster[static_cast<std::size_t>(y) * spec.width + x]) {
                image.at(x, y) = 255;
                truth.noisePixels.push_back({x, y});
            }
        }
    }
    return result;
}

void write_ground_truth(std::ostream& out, const SyntheticSpec& spec, const GroundTruth& truth) {
    using io::format_double;
    out << "# seed=" << truth.seed << ",width=" << spec.width << ",height=" << spec.height
        << ",sampling=" << format_double(spec.samplingProb)
        << ",noise=" << format_double(spec.noiseProb) << '\n';
    out << "# x0=" << format_double(truth.segment.p0.x) << ",y0=" << format_double(truth.segment.p0.y)
        << ",x1=" << format_double(truth.segment.p1.x) << ",y1=" << format_double(truth.segment.p1.y);
    if (truth.line) {
        out << ",slope=" << format_double(truth.line->slope)
            << ",intercept=" << format_double(truth.line->intercept);
    }
    out << ",rho=" << format_double(truth.rho) << ",theta=" << format_double(truth.thetaDeg) << '\n';
    out << "kind,x,y\n";
    for (const auto& px : truth.linePixels) out << "line," << px.x << ',' << px.y << '\n';
    for (const auto& px : truth.noisePixels) out << "noise," << px.x << ',' << px.y << '\n';
}

void write_ground_truth(const std::filesystem::path& path, const SyntheticSpec& spec,
                        const GroundTruth& truth) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open " + path.string() + " for writing");
    write_ground_truth(out, spec, truth);
}

}  // namespace lmsline::imaging
