#include <lmsline/imaging/pgm.hpp>
#include <lmsline/error.hpp>

#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>

namespace lmsline::imaging {

namespace {

class HeaderReader {
public:
    explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

    std::size_t offset() const { return pos_; }
    /// Offset of the integer most recently read by next_int.
    std::size_t token_offset() const { return tokenAt_; }

    void expect_magic() {
        if (bytes_.substr(0, 2) != "P5") throw ParseError("not a binary PGM (expected P5)", 0);
        pos_ = 2;
    }

    // Whitespace and '#' comments, then a decimal integer.
    long long next_int(const char* field) {
        bool sawSpace = false;
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
                sawSpace = true;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
                sawSpace = true;
            } else {
                break;
            }
        }
        if (!sawSpace) throw ParseError(std::string("missing whitespace before ") + field, pos_);
        if (pos_ >= bytes_.size()) throw ParseError(std::string("truncated header at ") + field, pos_);
        const std::size_t start = pos_;
        tokenAt_ = start;
        long long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > std::numeric_limits<int>::max()) {
                throw ParseError(std::string(field) + " too large", start);
            }
            ++pos_;
        }
        if (pos_ == start) throw ParseError(std::string("expected integer ") + field, start);
        return value;
    }

    void single_whitespace() {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
            throw ParseError("expected single whitespace after maxval", pos_);
        }
        ++pos_;
    }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
    std::size_t tokenAt_ = 0;
};

}  // namespace

std::string encode_pgm(const GrayImage& image) {
    std::string out = "P5\n" + std::to_string(image.width()) + " " +
                      std::to_string(image.height()) + "\n255\n";
    out.append(image.pixels().begin(), image.pixels().end());
    return out;
}

GrayImage decode_pgm(std::string_view bytes) {
    HeaderReader reader(bytes);
    reader.expect_magic();
    const auto width = reader.next_int("width");
    if (width <= 0) throw ParseError("image width must be positive", reader.token_offset());
    const auto height = reader.next_int("height");
    if (height <= 0) throw ParseError("image height must be positive", reader.token_offset());
    const auto maxval = reader.next_int("maxval");
    if (maxval != 255) {
        throw ParseError("unsupported maxval " + std::to_string(maxval) + " (only 255)",
                         reader.token_offset());
    }
    reader.single_whitespace();

    const std::size_t dataAt = reader.offset();
    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (bytes.size() - dataAt < count) {
        throw ParseError("truncated pixel data: need " + std::to_string(count) + " bytes, have " +
                             std::to_string(bytes.size() - dataAt),
                         bytes.size());
    }
    GrayImage image(static_cast<int>(width), static_cast<int>(height));
    const auto* data = reinterpret_cast<const std::uint8_t*>(bytes.data() + dataAt);
    std::copy(data, data + count, image.pixels().begin());
    return image;
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot open " + path.string() + " for writing");
    const auto bytes = encode_pgm(image);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw InvalidInput("write failed: " + path.string());
}

GrayImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open " + path.string());
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_pgm(bytes);
}

}  // namespace lmsline::imaging
