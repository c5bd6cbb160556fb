#include <lmsline/io/csv.hpp>
#include <lmsline/detect/line_detect.hpp>
#include <lmsline/error.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <ostream>

namespace lmsline::io {

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw InternalError("to_chars failed");
    return std::string(buf.data(), ptr);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_field(std::string_view field, std::size_t offset) {
    const auto f = trim(field);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
    if (ec != std::errc{} || ptr != f.data() + f.size() || f.empty()) {
        throw ParseError("invalid number '" + std::string(f) + "'", offset);
    }
    if (!std::isfinite(value)) throw ParseError("non-finite coordinate", offset);
    return value;
}

}  // namespace

std::vector<core::Point2> parse_points_csv(std::string_view text) {
    std::vector<core::Point2> points;
    std::size_t pos = 0;
    bool headerSeen = false;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        const std::string_view line = text.substr(pos, eol - pos);
        const std::size_t lineAt = pos;
        pos = eol + 1;
        if (trim(line).empty()) continue;
        if (!headerSeen) {
            if (trim(line) != "x,y") throw ParseError("expected header 'x,y'", lineAt);
            headerSeen = true;
            continue;
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
            throw ParseError("expected two comma-separated fields", lineAt);
        }
        const double x = parse_field(line.substr(0, comma), lineAt);
        const double y = parse_field(line.substr(comma + 1), lineAt + comma + 1);
        points.push_back({x, y});
    }
    if (!headerSeen) throw ParseError("empty point file", 0);
    return points;
}

std::vector<core::Point2> read_points_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open " + path.string());
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_points_csv(text);
}

void write_points_csv(std::ostream& out, std::span<const core::Point2> points) {
    out << "x,y\n";
    for (const auto& p : points) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

void write_fit_row(std::ostream& out, const core::LmsFit& fit) {
    out << format_double(fit.line.slope) << ',' << format_double(fit.line.intercept) << ','
        << format_double(fit.lmsValue) << ',' << format_double(fit.slabHeight) << ','
        << fit.coverage << '\n';
}

void write_detections(std::ostream& out, std::span<const detect::LineDetection> detections) {
    out << kDetectionHeader << '\n';
    for (const auto& d : detections) {
        const auto image = d.image_line();
        out << detect::method_name(d.method) << ',' << format_double(d.rho) << ','
            << format_double(d.thetaDeg) << ',' << format_double(image.slope) << ','
            << format_double(image.intercept) << ',';
        if (d.lmsValue) out << format_double(*d.lmsValue);
        out << ',' << d.support.size() << '\n';
    }
}

}  // namespace lmsline::io
