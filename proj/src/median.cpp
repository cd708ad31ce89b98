#include "stripsar/median.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace stripsar {

void MedianConfig::validate(const GrayImage& img) const {
    if (img.empty())
        throw std::invalid_argument("median_filter: empty image");
    if (p == 0 || q == 0)
        throw std::invalid_argument("median_filter: window sides must be >= 1");
}

namespace {

inline std::int64_t clampi(std::int64_t v, std::int64_t lo, std::int64_t hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

}  // namespace

GrayImage median_filter(const GrayImage& img, const MedianConfig& cfg,
                        HistCounters* counters) {
    cfg.validate(img);
    const std::int64_t w = static_cast<std::int64_t>(img.width());
    const std::int64_t h = static_cast<std::int64_t>(img.height());
    const std::int64_t p = static_cast<std::int64_t>(cfg.p);
    const std::int64_t q = static_cast<std::int64_t>(cfg.q);
    const std::int64_t ax = (p - 1) / 2;
    const std::int64_t ay = (q - 1) / 2;

    GrayImage out(img.width(), img.height());
    HistCounters total{};

#pragma omp parallel
    {
        HistCounters local{};
#pragma omp for schedule(static)
        for (std::int64_t y = 0; y < h; ++y) {
            Histogram256 hist;
            // Seed the window for x = 0, replicating out-of-range pixels.
            for (std::int64_t dy = 0; dy < q; ++dy) {
                std::int64_t yy = clampi(y - ay + dy, 0, h - 1);
                for (std::int64_t dx = 0; dx < p; ++dx) {
                    std::int64_t xx = clampi(-ax + dx, 0, w - 1);
                    hist.add(img.at(static_cast<std::size_t>(xx),
                                    static_cast<std::size_t>(yy)));
                }
            }
            local.builds += 1;
            out.at(0, static_cast<std::size_t>(y)) = hist_median(hist);
            for (std::int64_t x = 1; x < w; ++x) {
                std::int64_t x_out = clampi(x - 1 - ax, 0, w - 1);
                std::int64_t x_in = clampi(x + p - 1 - ax, 0, w - 1);
                for (std::int64_t dy = 0; dy < q; ++dy) {
                    std::int64_t yy = clampi(y - ay + dy, 0, h - 1);
                    hist.remove(img.at(static_cast<std::size_t>(x_out),
                                       static_cast<std::size_t>(yy)));
                    hist.add(img.at(static_cast<std::size_t>(x_in),
                                    static_cast<std::size_t>(yy)));
                }
                local.inserts += static_cast<std::uint64_t>(q);
                local.removes += static_cast<std::uint64_t>(q);
                out.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) =
                    hist_median(hist);
            }
        }
#pragma omp critical
        {
            total.builds += local.builds;
            total.inserts += local.inserts;
            total.removes += local.removes;
        }
    }

    if (counters) {
        counters->builds += total.builds;
        counters->inserts += total.inserts;
        counters->removes += total.removes;
    }
    return out;
}

}  // namespace stripsar
