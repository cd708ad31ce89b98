#pragma once

#include <cstddef>
#include <vector>

#include "stripsar/image.hpp"
#include "stripsar/median.hpp"

namespace stripsar {

// Mean squared error between two equally sized images.
double mse(const GrayImage& a, const GrayImage& b);

// Peak signal-to-noise ratio, 10 log10(255^2 / mse). Identical images
// yield +infinity.
double psnr(const GrayImage& a, const GrayImage& b);

struct SweepPoint {
    std::size_t p = 0;
    std::size_t q = 0;
    double psnr_db = 0.0;
};

// For each window size, PSNR of the median-filtered image against the
// unfiltered input.
std::vector<SweepPoint> psnr_sweep(const GrayImage& noisy,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& sizes);

}  // namespace stripsar
