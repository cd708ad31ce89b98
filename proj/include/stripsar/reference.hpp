#pragma once

#include <vector>

#include "stripsar/complex_matrix.hpp"
#include "stripsar/image.hpp"
#include "stripsar/median.hpp"

namespace stripsar {
namespace reference {

// O(N^2) direct evaluation of the unitary DFT, serial. Oracle for the
// FFT wrapper and anchor for the benchmark.
std::vector<cplx> dft_direct(const std::vector<cplx>& x, int sign);

// Median filter by sorting every window, serial. Same window anchoring,
// border policy, and lower-median rank as the histogram kernel.
GrayImage median_filter_naive(const GrayImage& img, const MedianConfig& cfg);

}  // namespace reference
}  // namespace stripsar
