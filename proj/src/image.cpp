#include "stripsar/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace stripsar {

GrayImage magnitude_to_gray(const ComplexMatrix& m, GrayScaling scaling,
                            double percentile) {
    if (m.empty())
        throw std::invalid_argument("magnitude_to_gray: empty matrix");
    if (scaling == GrayScaling::percentile &&
        !(percentile > 0.0 && percentile <= 100.0))
        throw std::invalid_argument("magnitude_to_gray: percentile out of (0, 100]");

    const std::size_t n = m.size();
    std::vector<double> mag(n);
    const cplx* src = m.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
        mag[i] = std::abs(src[i]);

    double ref;
    if (scaling == GrayScaling::linear_max) {
        ref = *std::max_element(mag.begin(), mag.end());
    } else {
        std::vector<double> sorted(mag);
        std::size_t idx = static_cast<std::size_t>(
            std::llround(percentile / 100.0 * (static_cast<double>(n) - 1.0)));
        idx = std::min(idx, n - 1);
        std::nth_element(sorted.begin(), sorted.begin() + idx, sorted.end());
        ref = sorted[idx];
    }
    // A zero percentile level falls back to the max; an all-zero input
    // keeps ref = 1 and maps to an all-zero image.
    if (ref <= 0.0) ref = *std::max_element(mag.begin(), mag.end());
    if (ref <= 0.0) ref = 1.0;

    GrayImage out(m.n_rg(), m.n_az());
    std::uint8_t* dst = out.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        double r = std::clamp(mag[i] / ref, 0.0, 1.0);
        dst[i] = static_cast<std::uint8_t>(std::lround(255.0 * r));
    }
    return out;
}

}  // namespace stripsar
