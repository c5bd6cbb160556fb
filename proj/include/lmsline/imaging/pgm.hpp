/**
 * @file pgm.hpp
 * @brief Binary PGM (P5) with maxval 255. Other maxvals are rejected.
 */
#pragma once

#include <lmsline/imaging/image.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace lmsline::imaging {

/// Header "P5\n<w> <h>\n255\n" followed by row-major pixel bytes.
std::string encode_pgm(const GrayImage& image);

/// Throws ParseError (with byte offset) on malformed header, unsupported
/// maxval or truncated pixel data.
GrayImage decode_pgm(std::string_view bytes);

void write_pgm(const std::filesystem::path& path, const GrayImage& image);
GrayImage read_pgm(const std::filesystem::path& path);

}  // namespace lmsline::imaging
