#pragma once

#include <array>
#include <cstdint>

#include "stripsar/histogram.hpp"
#include "stripsar/image.hpp"
#include "stripsar/median.hpp"

namespace stripsar {

// How tile transforms are applied to pixels.
enum class TileBlend {
    independent,  // each pixel uses its own tile's transform (blocky, exact)
    bilinear,     // blend the four surrounding tile transforms
};

// Contrast-limited adaptive histogram equalization configuration.
// clip_limit is a multiple of the uniform level: the per-bin cap is
// max(1, round(clip_limit * tile_pixels / 256)), with tile_pixels the
// actual pixel count of the tile (edge tiles are smaller).
struct ClaheConfig {
    std::size_t tile_w = 16;
    std::size_t tile_h = 16;
    double clip_limit = 4.0;
    TileBlend blend = TileBlend::independent;

    void validate() const;
};

// Monotone equalization transform derived from a histogram:
// T[v] = round(255 * (cdf[v] - cdf_min) / (n - cdf_min)), identity when the
// histogram occupies a single bin (degenerate denominator).
std::array<std::uint8_t, 256> equalize_lut(const Histogram256& h);

// Global histogram equalization of the whole image. Constant images pass
// through unchanged.
GrayImage equalize(const GrayImage& img);

// Tile-wise contrast-limited equalization. A tile whose histogram occupies
// a single bin is left unchanged.
GrayImage clahe(const GrayImage& img, const ClaheConfig& cfg,
                HistCounters* counters = nullptr);

// Fused median filter + tile equalization in one pass over the image:
// bit-exact equal to clahe(median_filter(img, mcfg), ccfg) but builds one
// histogram per tile instead of one per image row plus one per tile.
// Median windows read the raw image (apron pixels come from outside the
// tile), tile histograms accumulate the filtered values incrementally.
GrayImage joint_denoise_enhance(const GrayImage& img, const MedianConfig& mcfg,
                                const ClaheConfig& ccfg,
                                HistCounters* counters = nullptr);

}  // namespace stripsar
