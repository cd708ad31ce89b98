#pragma once

#include <complex>
#include <string>

namespace stripsar {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Acquisition geometry and chirp parameters for a strip-map collection.
struct RadarParams {
    double fc = 0.0;         // carrier frequency [Hz]
    double fr = 0.0;         // range sampling rate [Hz]
    double prf = 0.0;        // pulse repetition frequency [Hz]
    double beta = 0.0;       // chirp FM rate [Hz/s]
    double chirp = 0.0;      // transmitted pulse duration [s]
    double v = 0.0;          // effective platform velocity [m/s]
    double bandwidth = 0.0;  // chirp bandwidth [Hz]
    double r0 = 0.0;         // slant range of the first range bin [m]

    double wavelength() const { return kSpeedOfLight / fc; }

    // Throws std::invalid_argument if any field is unusable (non-positive
    // values, bandwidth exceeding the sampling rate).
    void validate() const;

    // Non-empty when beta*chirp disagrees with bandwidth by more than 1%.
    // Inconsistent parameter sets are usable, so this is not an error.
    std::string consistency_warning() const;

    // C-band spaceborne preset (ERS-2 style acquisition geometry).
    static RadarParams ers2();
};

// One ideal point scatterer in the scene.
struct PointTarget {
    std::complex<double> sigma;  // complex reflectivity
    double r0 = 0.0;             // slant range of closest approach [m]
    double eta_c = 0.0;          // beam-center slow time [s]
    double aperture_time = 0.0;  // azimuth illumination window [s]
};

}  // namespace stripsar
