#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "stripsar/complex_matrix.hpp"

namespace stripsar {

// 8-bit grayscale raster. Pixel (x, y): x runs along range (columns),
// y along azimuth (rows). Row-major storage, y * width + x.
class GrayImage {
  public:
    GrayImage() = default;
    GrayImage(std::size_t width, std::size_t height, std::uint8_t fill = 0)
        : width_(width), height_(height), pix_(width * height, fill) {}

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    std::size_t size() const { return pix_.size(); }
    bool empty() const { return pix_.empty(); }

    std::uint8_t& at(std::size_t x, std::size_t y) { return pix_[y * width_ + x]; }
    std::uint8_t at(std::size_t x, std::size_t y) const { return pix_[y * width_ + x]; }

    std::uint8_t* data() { return pix_.data(); }
    const std::uint8_t* data() const { return pix_.data(); }

    bool operator==(const GrayImage& o) const {
        return width_ == o.width_ && height_ == o.height_ && pix_ == o.pix_;
    }

  private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<std::uint8_t> pix_;
};

// How the magnitude-to-gray reference level is chosen.
enum class GrayScaling {
    linear_max,  // reference = max |s| over the matrix
    percentile,  // reference = given percentile of |s|; brighter values clamp
};

// Quantize |s| to 8 bits: pixel = round(255 * clamp(|s|/ref, 0, 1)).
// All-zero input maps to an all-zero image.
GrayImage magnitude_to_gray(const ComplexMatrix& m, GrayScaling scaling,
                            double percentile = 99.9);

}  // namespace stripsar
