#pragma once

#include <cstddef>
#include <vector>

#include "stripsar/complex_matrix.hpp"
#include "stripsar/radar.hpp"

namespace stripsar {

// Everything the Doppler-centroid stage produces.
struct DopplerEstimate {
    double fdc_amplitude = 0.0;      // spectrum-fit estimate [Hz]
    double fdc_phase = 0.0;          // correlation-angle estimate [Hz]
    double fdc_combined = 0.0;       // mean of the two [Hz]
    double accc_angle = 0.0;         // average cross-correlation angle [rad]
    double squint_deg = 0.0;         // squint implied by fdc_combined [deg]
    std::size_t n_range_cells = 0;   // cells averaged into the spectrum
};

// Mean of the per-range-cell azimuth power spectra: for each range cell,
// |unitary DFT along azimuth|^2, then the average over cells, bin by bin.
// Requires n_az >= 8. Bin k holds the power at baseband frequency
// wrapped_bin_freq(k, n_az, prf).
std::vector<double> azimuth_power_spectrum(const ComplexMatrix& m);

// Locate the spectrum peak: circular 3-bin smoothing, circular argmax,
// then a least-squares polynomial fit (order 2 or 4) over +-fit_halfwidth
// bins around the peak, maximized on a dense grid. Frequencies are
// labeled baseband, so the result lies in (-prf/2, prf/2].
// Throws NumericalError when the spectrum has no usable peak
// (max < 1.1 * mean).
double estimate_fdc_amplitude(const std::vector<double>& spectrum, double prf,
                              std::size_t fit_halfwidth_bins, int poly_order);

// Average cross-correlation coefficient between consecutive azimuth lines:
// C = sum over (eta, t) of conj(s(t, eta)) * s(t, eta + 1).
// Returns the centroid prf * arg(C) / (2 pi); `angle_out` receives arg(C).
// Works best on range-compressed data. Throws NumericalError when |C| = 0.
double estimate_fdc_accc(const ComplexMatrix& m, double prf, double* angle_out = nullptr);

// Arithmetic mean of the two estimates.
double combine_estimates(double fdc_amplitude, double fdc_phase);

// Squint angle [deg] implied by a Doppler centroid:
// theta = asin(fdc * lambda / (2 v)).
double squint_angle_deg(double fdc, const RadarParams& params);

// Full stage: spectrum fit on the raw data, correlation angle on the
// range-compressed data, combination, squint.
DopplerEstimate estimate_doppler(const ComplexMatrix& raw, const RadarParams& params);

}  // namespace stripsar
