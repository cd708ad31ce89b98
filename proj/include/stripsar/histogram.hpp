#pragma once

#include <array>
#include <cstdint>

namespace stripsar {

// Intensity histogram over the 8-bit range with O(1) add/remove, the
// workhorse of the sliding median filter and the tile equalizer.
struct Histogram256 {
    std::array<std::uint32_t, 256> counts{};
    std::uint64_t total = 0;

    void add(std::uint8_t v) {
        ++counts[v];
        ++total;
    }
    void remove(std::uint8_t v) {
        --counts[v];
        --total;
    }
    void clear() {
        counts.fill(0);
        total = 0;
    }
    // Number of bins with a non-zero count.
    int occupied() const {
        int n = 0;
        for (std::uint32_t c : counts) n += (c != 0);
        return n;
    }
};

// Lower median: the smallest intensity whose cumulative count reaches
// rank floor((total + 1) / 2). Total must be non-zero.
std::uint8_t hist_median(const Histogram256& h);

// Work counters shared by the filtering/enhancement kernels. A "build"
// is a from-scratch pass over stored pixels to populate a histogram;
// inserts/removes count incremental maintenance of an existing one.
struct HistCounters {
    std::uint64_t builds = 0;
    std::uint64_t inserts = 0;
    std::uint64_t removes = 0;
};

// Limit every bin to clip_count, redistributing the clipped excess
// uniformly: every bin gains excess/256, and the first (excess mod 256)
// bins gain one more. Total count is preserved exactly.
Histogram256 clip_histogram(const Histogram256& h, std::uint64_t clip_count);

}  // namespace stripsar
