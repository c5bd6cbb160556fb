#include <lmsline/imaging/image.hpp>
#include <lmsline/error.hpp>

namespace lmsline::imaging {

GrayImage::GrayImage(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
        throw InvalidInput("image dimensions must be positive");
    }
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

}  // namespace lmsline::imaging
