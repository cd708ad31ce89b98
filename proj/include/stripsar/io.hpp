#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "stripsar/complex_matrix.hpp"
#include "stripsar/image.hpp"
#include "stripsar/radar.hpp"

namespace stripsar {

// Key = value description of a raw capture: radar parameters plus grid
// shape and sample encoding. Doubles as the parameter-preset format.
struct Sidecar {
    RadarParams params;
    std::size_t n_az = 0;
    std::size_t n_rg = 0;
    std::string sample_format = "f32";  // f32 | i16 | i8
    double sample_offset = 0.0;         // subtracted from integer samples

    // Fast time of the first range sample implied by params.r0.
    double t0() const { return 2.0 * params.r0 / kSpeedOfLight; }
};

// Parse a sidecar / preset file: `key = value` lines, '#' comments, blank
// lines ignored. Unknown keys are errors; missing required keys are errors.
Sidecar load_sidecar(const std::string& path);
void save_sidecar(const std::string& path, const Sidecar& sc);

// Interleaved I/Q raw capture, range-major within each azimuth line.
// Integer formats are little-endian and de-biased by sample_offset.
ComplexMatrix read_raw(const std::string& path, const Sidecar& sc);
void write_raw_f32(const std::string& path, const ComplexMatrix& m);

// Binary PGM (P5), maxval 255.
void write_pgm(const std::string& path, const GrayImage& img);
void write_pgm(std::ostream& os, const GrayImage& img);
GrayImage read_pgm(const std::string& path);

// Native complex-image container: 64-byte header (magic, version, n_az,
// n_rg, t0, eta0, domain, reserved), then float32 I/Q pairs row-major.
void write_complex(const std::string& path, const ComplexMatrix& m);
ComplexMatrix read_complex(const std::string& path);

// Point-target scene: one target per line,
// `sigma_re sigma_im r0_m eta_c_s aperture_s`, '#' comments.
std::vector<PointTarget> load_scene(const std::string& path);

}  // namespace stripsar
