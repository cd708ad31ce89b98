#include "stripsar/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace stripsar {
namespace reference {

std::vector<cplx> dft_direct(const std::vector<cplx>& x, int sign) {
    const std::size_t n = x.size();
    if (n == 0) throw std::invalid_argument("dft_direct: empty input");
    std::vector<cplx> out(n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double ang = sign * 2.0 * std::numbers::pi *
                         static_cast<double>(k) * static_cast<double>(i) /
                         static_cast<double>(n);
            acc += x[i] * cplx(std::cos(ang), std::sin(ang));
        }
        out[k] = acc * norm;
    }
    return out;
}

GrayImage median_filter_naive(const GrayImage& img, const MedianConfig& cfg) {
    cfg.validate(img);
    const std::int64_t w = static_cast<std::int64_t>(img.width());
    const std::int64_t h = static_cast<std::int64_t>(img.height());
    const std::int64_t p = static_cast<std::int64_t>(cfg.p);
    const std::int64_t q = static_cast<std::int64_t>(cfg.q);
    const std::int64_t ax = (p - 1) / 2;
    const std::int64_t ay = (q - 1) / 2;

    GrayImage out(img.width(), img.height());
    std::vector<std::uint8_t> window;
    window.reserve(static_cast<std::size_t>(p * q));
    for (std::int64_t y = 0; y < h; ++y) {
        for (std::int64_t x = 0; x < w; ++x) {
            window.clear();
            for (std::int64_t dy = 0; dy < q; ++dy) {
                std::int64_t yy = std::clamp(y - ay + dy, std::int64_t{0}, h - 1);
                for (std::int64_t dx = 0; dx < p; ++dx) {
                    std::int64_t xx = std::clamp(x - ax + dx, std::int64_t{0}, w - 1);
                    window.push_back(img.at(static_cast<std::size_t>(xx),
                                            static_cast<std::size_t>(yy)));
                }
            }
            std::size_t rank = (window.size() + 1) / 2;  // lower median
            std::nth_element(window.begin(), window.begin() + (rank - 1), window.end());
            out.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) =
                window[rank - 1];
        }
    }
    return out;
}

}  // namespace reference
}  // namespace stripsar
