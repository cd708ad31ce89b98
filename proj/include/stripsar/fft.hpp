#pragma once

#include <cstddef>

#include "stripsar/complex_matrix.hpp"

namespace stripsar {

inline constexpr int kFftForward = -1;  // kernel exp(-j 2 pi k n / N)
inline constexpr int kFftInverse = +1;  // kernel exp(+j 2 pi k n / N)

// In-place unitary transforms (1/sqrt(N) applied on every pass) along each
// row (fast time) or each column (slow time). Rows/columns are independent
// and run in parallel.
void fft_rows(ComplexMatrix& m, int sign);
void fft_cols(ComplexMatrix& m, int sign);

// Frequency label of storage bin k for an N-point transform at sampling
// rate fs, wrapped into (-fs/2, fs/2].
double wrapped_bin_freq(std::size_t k, std::size_t n, double fs);

// Frequency label wrapped into [center - fs/2, center + fs/2). Used for the
// azimuth axis, where spectral content sits around the Doppler centroid
// rather than around zero.
double centered_bin_freq(std::size_t k, std::size_t n, double fs, double center);

}  // namespace stripsar
