#include "stripsar/metrics.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace stripsar {

double mse(const GrayImage& a, const GrayImage& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw std::invalid_argument("mse: image dimensions differ");
    if (a.empty())
        throw std::invalid_argument("mse: empty images");
    const std::int64_t h = static_cast<std::int64_t>(a.height());
    const std::int64_t w = static_cast<std::int64_t>(a.width());
    // Per-row partial sums, then a serial reduction in row order, so the
    // result is identical for any thread count.
    std::vector<std::uint64_t> row_sq(static_cast<std::size_t>(h), 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t y = 0; y < h; ++y) {
        std::uint64_t acc = 0;
        for (std::int64_t x = 0; x < w; ++x) {
            std::int64_t d = static_cast<std::int64_t>(a.at(x, y)) -
                             static_cast<std::int64_t>(b.at(x, y));
            acc += static_cast<std::uint64_t>(d * d);
        }
        row_sq[static_cast<std::size_t>(y)] = acc;
    }
    std::uint64_t total = 0;
    for (std::uint64_t s : row_sq) total += s;
    return static_cast<double>(total) / (static_cast<double>(w) * static_cast<double>(h));
}

double psnr(const GrayImage& a, const GrayImage& b) {
    double e = mse(a, b);
    if (e == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / e);
}

std::vector<SweepPoint> psnr_sweep(
    const GrayImage& noisy,
    const std::vector<std::pair<std::size_t, std::size_t>>& sizes) {
    std::vector<SweepPoint> out;
    out.reserve(sizes.size());
    for (auto [p, q] : sizes) {
        MedianConfig cfg;
        cfg.p = p;
        cfg.q = q;
        GrayImage filtered = median_filter(noisy, cfg);
        out.push_back({p, q, psnr(noisy, filtered)});
    }
    return out;
}

}  // namespace stripsar
