#pragma once

#include <cstddef>

#include "stripsar/histogram.hpp"
#include "stripsar/image.hpp"

namespace stripsar {

// Border policy for windows that spill past the image edge.
enum class Border {
    replicate,  // out-of-range coordinates clamp to the nearest edge pixel
};

// Sliding-window median configuration. The p x q window (p columns wide,
// q rows tall) for output pixel (x, y) spans columns
// [x - floor((p-1)/2), x - floor((p-1)/2) + p - 1] and rows likewise with q.
struct MedianConfig {
    std::size_t p = 3;
    std::size_t q = 3;
    Border border = Border::replicate;

    void validate(const GrayImage& img) const;
};

// Histogram-based sliding median filter. Seeds one histogram per output
// row and slides it along the row in O(q + 256) per pixel. Rows are
// independent and run in parallel.
GrayImage median_filter(const GrayImage& img, const MedianConfig& cfg,
                        HistCounters* counters = nullptr);

}  // namespace stripsar
