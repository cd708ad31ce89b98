#pragma once

#include <cstddef>
#include <vector>

#include "stripsar/complex_matrix.hpp"
#include "stripsar/radar.hpp"

namespace stripsar {

// Slant range from the platform to the target at slow time eta:
// R(eta) = sqrt(r0^2 + v^2 (eta - eta_c)^2).
double instantaneous_range(const PointTarget& target, double eta, double v);

// Synthesize baseband raw echoes for a set of point targets on an
// n_az x n_rg grid starting at (eta0, t0). Each target contributes
//   sigma * w_r(tau) * w_a(eta - eta_c)
//         * exp(j(-4 pi fc R(eta)/c + pi beta tau^2 + 2 pi fdc_inject eta))
// with tau = t - 2 R(eta)/c, w_r a rectangle of width `chirp`, and w_a a
// rectangle of width `aperture_time`. fdc_inject adds a pure linear phase
// ramp along azimuth, which shifts the Doppler spectrum by exactly
// fdc_inject without touching the geometry.
ComplexMatrix simulate_raw(const std::vector<PointTarget>& targets,
                           const RadarParams& params, std::size_t n_az,
                           std::size_t n_rg, double t0, double eta0,
                           double fdc_inject = 0.0);

}  // namespace stripsar
