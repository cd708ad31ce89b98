#pragma once

#include <cstddef>

#include "stripsar/complex_matrix.hpp"
#include "stripsar/radar.hpp"

namespace stripsar {

// Knobs for the wavenumber-domain focusing chain.
struct FocusConfig {
    double r_ref = 0.0;              // reference slant range [m]
    double fdc = 0.0;                // Doppler centroid for azimuth labeling [Hz]
    std::size_t stolt_kernel_len = 8;   // interpolation taps (even, >= 4)
    double stolt_window_beta = 5.0;  // Kaiser window shape
    bool stolt_linear = false;       // 2-tap linear interpolation instead

    // Throws std::invalid_argument on unusable values. r_ref must be > 0
    // here; stage functions accept r_ref = 0 as an explicit no-op reference.
    void validate() const;
};

// Counters for diagnosing the Stolt stage.
struct StoltStats {
    std::size_t evanescent_bins = 0;        // bins with no propagating source
    std::size_t occupied_evanescent = 0;    // of those, bins that held energy
};

// Forward 2D transform of a signal-domain matrix, then re-reference of the
// spectrum to the absolute time origin: each bin is scaled by
// exp(-j 2 pi (f_t t0 + f_eta eta0)), so downstream stage phases can be
// written against absolute fast time / slow time. Fast-time bins are
// labeled in (-fr/2, fr/2], azimuth bins in [fdc - prf/2, fdc + prf/2).
ComplexMatrix fft2(const ComplexMatrix& m, const RadarParams& params, double fdc);

// Cancel the quadratic chirp phase: multiply bin (f_eta, f_t) by
// exp(+j pi f_t^2 / beta). Tags the output range_dechirped (in the
// frequency sense used by the focus chain).
ComplexMatrix range_dechirp(const ComplexMatrix& spec, const RadarParams& params);

// Bulk compression at the reference range: multiply by
// exp(+j 4 pi (r_ref/c) sqrt((fc + f_t)^2 - c^2 f_eta^2 / (4 v^2))).
// Bins whose radicand is negative carry no propagating-wave support; they
// are zeroed and counted. Throws NumericalError when more than 10% of the
// zeroed bins held significant energy.
ComplexMatrix reference_multiply(const ComplexMatrix& spec, const FocusConfig& cfg,
                                 const RadarParams& params, StoltStats* stats = nullptr);

// Stolt remapping: resample each azimuth row so the skewed frequency
// sqrt((fc + f_t)^2 - c^2 f_eta^2/(4 v^2)) - fc becomes the new uniform
// fast-time frequency f'_t. Output bin f'_t reads the input at
// f_t = sqrt((fc + f'_t)^2 + c^2 f_eta^2/(4 v^2)) - fc via Kaiser-windowed
// sinc interpolation (or linear when cfg.stolt_linear). Sources outside
// the input band contribute zero.
ComplexMatrix stolt_interpolate(const ComplexMatrix& spec, const FocusConfig& cfg,
                                const RadarParams& params);

// Remove the reference-range offset (multiply by exp(-j 4 pi r_ref f'_t / c)),
// restore the grid time origin, and inverse-transform back to the signal
// domain, yielding the focused single-look complex image.
ComplexMatrix finalize_image(const ComplexMatrix& spec, const FocusConfig& cfg,
                             const RadarParams& params);

// The whole chain: fft2 -> range_dechirp -> reference_multiply ->
// stolt_interpolate -> finalize_image.
ComplexMatrix focus(const ComplexMatrix& raw, const FocusConfig& cfg,
                    const RadarParams& params, StoltStats* stats = nullptr);

// Range compression only: per-row forward FFT, chirp phase cancellation,
// inverse FFT. Output stays in the time domain (signal), each pulse
// collapsed to a sinc around its true delay. This is the preferred input
// for the correlation-angle centroid estimator.
ComplexMatrix range_compress(const ComplexMatrix& raw, const RadarParams& params);

}  // namespace stripsar
