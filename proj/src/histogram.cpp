#include "stripsar/histogram.hpp"

#include <stdexcept>

namespace stripsar {

std::uint8_t hist_median(const Histogram256& h) {
    if (h.total == 0)
        throw std::invalid_argument("hist_median: empty histogram");
    std::uint64_t rank = (h.total + 1) / 2;
    std::uint64_t cum = 0;
    for (int v = 0; v < 256; ++v) {
        cum += h.counts[v];
        if (cum >= rank) return static_cast<std::uint8_t>(v);
    }
    // Unreachable: cum == total >= rank by the loop end.
    return 255;
}

Histogram256 clip_histogram(const Histogram256& h, std::uint64_t clip_count) {
    if (clip_count == 0)
        throw std::invalid_argument("clip_histogram: clip_count must be >= 1");
    Histogram256 out;
    std::uint64_t excess = 0;
    for (int v = 0; v < 256; ++v) {
        std::uint64_t c = h.counts[v];
        if (c > clip_count) {
            excess += c - clip_count;
            c = clip_count;
        }
        out.counts[v] = static_cast<std::uint32_t>(c);
    }
    std::uint64_t share = excess / 256;
    std::uint64_t remainder = excess % 256;
    for (int v = 0; v < 256; ++v)
        out.counts[v] += static_cast<std::uint32_t>(share + (static_cast<std::uint64_t>(v) < remainder ? 1 : 0));
    out.total = h.total;
    return out;
}

}  // namespace stripsar
