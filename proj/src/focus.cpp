#include "stripsar/focus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "stripsar/error.hpp"
#include "stripsar/fft.hpp"

namespace stripsar {

namespace {

constexpr double kPi = std::numbers::pi;

inline cplx phasor(double angle) { return cplx(std::cos(angle), std::sin(angle)); }

double sinc(double x) {
    if (std::abs(x) < 1e-9) return 1.0;
    double px = kPi * x;
    return std::sin(px) / px;
}

double bessel_i0(double x) {
    double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 64; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

// Skewed range frequency sqrt((fc + f_t)^2 - (c f_eta / 2v)^2), the
// quantity the Stolt map straightens. Negative radicand: no propagating
// support (evanescent bin).
inline double radicand(double fc_plus_ft, double k_eta) {
    return fc_plus_ft * fc_plus_ft - k_eta * k_eta;
}

// Deterministic max |s| over the matrix: per-row maxima combined serially.
double max_abs(const ComplexMatrix& m) {
    std::vector<double> row_max(m.n_az(), 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t az = 0; az < static_cast<std::int64_t>(m.n_az()); ++az) {
        const cplx* r = m.row(static_cast<std::size_t>(az));
        double mx = 0.0;
        for (std::size_t j = 0; j < m.n_rg(); ++j) mx = std::max(mx, std::abs(r[j]));
        row_max[static_cast<std::size_t>(az)] = mx;
    }
    double mx = 0.0;
    for (double v : row_max) mx = std::max(mx, v);
    return mx;
}

}  // namespace

void FocusConfig::validate() const {
    if (!(r_ref > 0.0) || !std::isfinite(r_ref))
        throw std::invalid_argument("FocusConfig: r_ref must be positive and finite");
    if (!std::isfinite(fdc))
        throw std::invalid_argument("FocusConfig: fdc must be finite");
    if (stolt_kernel_len < 4 || stolt_kernel_len > 64 || stolt_kernel_len % 2 != 0)
        throw std::invalid_argument("FocusConfig: stolt_kernel_len must be even, in [4, 64]");
    if (!(stolt_window_beta >= 0.0))
        throw std::invalid_argument("FocusConfig: stolt_window_beta must be >= 0");
}

ComplexMatrix fft2(const ComplexMatrix& m, const RadarParams& params, double fdc) {
    require_domain(m, Domain::signal, "fft2");
    params.validate();
    ComplexMatrix out = m;
    fft_rows(out, kFftForward);
    fft_cols(out, kFftForward);

    // Re-reference the spectrum to the absolute time origin so the stage
    // phases, written against absolute (t, eta), apply verbatim. The grid
    // origin is restored by finalize_image.
    const std::size_t n_az = out.n_az(), n_rg = out.n_rg();
    std::vector<cplx> col_fac(n_az), row_fac(n_rg);
    for (std::size_t k = 0; k < n_az; ++k) {
        double f_eta = centered_bin_freq(k, n_az, params.prf, fdc);
        col_fac[k] = phasor(-2.0 * kPi * f_eta * m.eta0);
    }
    for (std::size_t k = 0; k < n_rg; ++k) {
        double f_t = wrapped_bin_freq(k, n_rg, params.fr);
        row_fac[k] = phasor(-2.0 * kPi * f_t * m.t0);
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t az = 0; az < static_cast<std::int64_t>(n_az); ++az) {
        cplx* r = out.row(static_cast<std::size_t>(az));
        const cplx cf = col_fac[static_cast<std::size_t>(az)];
        for (std::size_t j = 0; j < n_rg; ++j) r[j] *= cf * row_fac[j];
    }
    out.domain = Domain::freq2d;
    return out;
}

ComplexMatrix range_dechirp(const ComplexMatrix& spec, const RadarParams& params) {
    require_domain(spec, Domain::freq2d, "range_dechirp");
    params.validate();
    ComplexMatrix out = spec;
    const std::size_t n_rg = out.n_rg();
    std::vector<cplx> fac(n_rg);
    for (std::size_t j = 0; j < n_rg; ++j) {
        double f_t = wrapped_bin_freq(j, n_rg, params.fr);
        fac[j] = phasor(kPi * f_t * f_t / params.beta);
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t az = 0; az < static_cast<std::int64_t>(out.n_az()); ++az) {
        cplx* r = out.row(static_cast<std::size_t>(az));
        for (std::size_t j = 0; j < n_rg; ++j) r[j] *= fac[j];
    }
    out.domain = Domain::range_dechirped;
    return out;
}

ComplexMatrix reference_multiply(const ComplexMatrix& spec, const FocusConfig& cfg,
                                 const RadarParams& params, StoltStats* stats) {
    require_domain(spec, Domain::range_dechirped, "reference_multiply");
    params.validate();
    if (!(cfg.r_ref >= 0.0) || !std::isfinite(cfg.r_ref))
        throw std::invalid_argument("reference_multiply: r_ref must be >= 0 and finite");

    const std::size_t n_az = spec.n_az(), n_rg = spec.n_rg();
    const double c = kSpeedOfLight;
    const double sig_floor = 1e-12 * max_abs(spec);

    ComplexMatrix out = spec;
    std::vector<std::size_t> row_evan(n_az, 0), row_occ(n_az, 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t az = 0; az < static_cast<std::int64_t>(n_az); ++az) {
        double f_eta = centered_bin_freq(static_cast<std::size_t>(az), n_az,
                                         params.prf, cfg.fdc);
        double k_eta = c * f_eta / (2.0 * params.v);
        cplx* r = out.row(static_cast<std::size_t>(az));
        std::size_t evan = 0, occ = 0;
        for (std::size_t j = 0; j < n_rg; ++j) {
            double f_t = wrapped_bin_freq(j, n_rg, params.fr);
            double rad = radicand(params.fc + f_t, k_eta);
            if (rad < 0.0) {
                ++evan;
                if (std::abs(r[j]) > sig_floor) ++occ;
                r[j] = 0.0;
            } else {
                r[j] *= phasor(4.0 * kPi * cfg.r_ref / c * std::sqrt(rad));
            }
        }
        row_evan[static_cast<std::size_t>(az)] = evan;
        row_occ[static_cast<std::size_t>(az)] = occ;
    }

    std::size_t evanescent = 0, occupied = 0;
    for (std::size_t az = 0; az < n_az; ++az) {
        evanescent += row_evan[az];
        occupied += row_occ[az];
    }
    if (stats) {
        stats->evanescent_bins += evanescent;
        stats->occupied_evanescent += occupied;
    }
    if (evanescent > 0 && occupied * 10 > evanescent)
        throw NumericalError(
            "reference_multiply: more than 10% of evanescent bins carry energy; "
            "parameters do not support this spectrum");
    return out;
}

ComplexMatrix stolt_interpolate(const ComplexMatrix& spec, const FocusConfig& cfg,
                                const RadarParams& params) {
    require_domain(spec, Domain::range_dechirped, "stolt_interpolate");
    params.validate();
    if (cfg.stolt_kernel_len < 4 || cfg.stolt_kernel_len % 2 != 0)
        throw std::invalid_argument("stolt_interpolate: kernel length must be even and >= 4");

    if (cfg.stolt_kernel_len > 64)
        throw std::invalid_argument("stolt_interpolate: kernel length must be <= 64");

    const std::size_t n_az = spec.n_az(), n_rg = spec.n_rg();
    const double c = kSpeedOfLight;
    const double df = params.fr / static_cast<double>(n_rg);
    const std::int64_t n = static_cast<std::int64_t>(n_rg);
    // Integer label bounds: bins represent frequencies m*df with
    // m in [-(n-1)/2, n/2].
    const std::int64_t m_min = -((n - 1) / 2);
    const std::int64_t m_max = n / 2;
    const std::int64_t half = static_cast<std::int64_t>(cfg.stolt_kernel_len) / 2;
    const double i0_beta = bessel_i0(cfg.stolt_window_beta);
    auto storage = [n](std::int64_t m) {
        return static_cast<std::size_t>(((m % n) + n) % n);
    };

    ComplexMatrix out(n_az, n_rg);
    out.domain = spec.domain;
    out.t0 = spec.t0;
    out.eta0 = spec.eta0;

#pragma omp parallel for schedule(static)
    for (std::int64_t az = 0; az < static_cast<std::int64_t>(n_az); ++az) {
        double f_eta = centered_bin_freq(static_cast<std::size_t>(az), n_az,
                                         params.prf, cfg.fdc);
        double k_eta = c * f_eta / (2.0 * params.v);
        const cplx* src_row = spec.row(static_cast<std::size_t>(az));
        cplx* dst_row = out.row(static_cast<std::size_t>(az));
        for (std::size_t j = 0; j < n_rg; ++j) {
            double f_new = wrapped_bin_freq(j, n_rg, params.fr);
            // Inverse map: which original f_t lands on this output bin.
            double f_src = std::sqrt((params.fc + f_new) * (params.fc + f_new) +
                                     k_eta * k_eta) -
                           params.fc;
            double u = f_src / df;

            cplx acc = 0.0;
            if (cfg.stolt_linear) {
                std::int64_t m0 = static_cast<std::int64_t>(std::floor(u));
                double w1 = u - static_cast<double>(m0);
                double w0 = 1.0 - w1;
                if (m0 >= m_min && m0 <= m_max) acc += w0 * src_row[storage(m0)];
                if (m0 + 1 >= m_min && m0 + 1 <= m_max) acc += w1 * src_row[storage(m0 + 1)];
            } else {
                std::int64_t m_first = static_cast<std::int64_t>(std::floor(u)) - half + 1;
                double wsum = 0.0;
                double w[64];
                for (std::int64_t i = 0; i < 2 * half; ++i) {
                    double d = u - static_cast<double>(m_first + i);
                    double xw = d / static_cast<double>(half);
                    double kw = 0.0;
                    double arg = 1.0 - xw * xw;
                    if (arg > 0.0)
                        kw = bessel_i0(cfg.stolt_window_beta * std::sqrt(arg)) / i0_beta;
                    else if (arg > -1e-12)
                        kw = 1.0 / i0_beta;
                    w[i] = sinc(d) * kw;
                    wsum += w[i];
                }
                if (std::abs(wsum) > 1e-12) {
                    for (std::int64_t i = 0; i < 2 * half; ++i) {
                        std::int64_t mm = m_first + i;
                        if (mm < m_min || mm > m_max) continue;
                        acc += (w[i] / wsum) * src_row[storage(mm)];
                    }
                }
            }
            dst_row[j] = acc;
        }
    }
    out.domain = Domain::stolt_mapped;
    return out;
}

ComplexMatrix finalize_image(const ComplexMatrix& spec, const FocusConfig& cfg,
                             const RadarParams& params) {
    require_domain(spec, Domain::stolt_mapped, "finalize_image");
    params.validate();

    const std::size_t n_az = spec.n_az(), n_rg = spec.n_rg();
    const double c = kSpeedOfLight;
    ComplexMatrix out = spec;

    // Cancel the reference-range carrier and hand the spectrum back to the
    // grid origin (inverse of the factor applied by fft2).
    std::vector<cplx> col_fac(n_az), row_fac(n_rg);
    for (std::size_t k = 0; k < n_az; ++k) {
        double f_eta = centered_bin_freq(k, n_az, params.prf, cfg.fdc);
        col_fac[k] = phasor(2.0 * kPi * f_eta * spec.eta0);
    }
    for (std::size_t k = 0; k < n_rg; ++k) {
        double f_new = wrapped_bin_freq(k, n_rg, params.fr);
        row_fac[k] = phasor(-4.0 * kPi * cfg.r_ref * f_new / c + 2.0 * kPi * f_new * spec.t0);
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t az = 0; az < static_cast<std::int64_t>(n_az); ++az) {
        cplx* r = out.row(static_cast<std::size_t>(az));
        const cplx cf = col_fac[static_cast<std::size_t>(az)];
        for (std::size_t j = 0; j < n_rg; ++j) r[j] *= cf * row_fac[j];
    }

    fft_cols(out, kFftInverse);
    fft_rows(out, kFftInverse);
    out.domain = Domain::signal;
    return out;
}

ComplexMatrix focus(const ComplexMatrix& raw, const FocusConfig& cfg,
                    const RadarParams& params, StoltStats* stats) {
    cfg.validate();
    ComplexMatrix spec = fft2(raw, params, cfg.fdc);
    spec = range_dechirp(spec, params);
    spec = reference_multiply(spec, cfg, params, stats);
    spec = stolt_interpolate(spec, cfg, params);
    return finalize_image(spec, cfg, params);
}

ComplexMatrix range_compress(const ComplexMatrix& raw, const RadarParams& params) {
    require_domain(raw, Domain::signal, "range_compress");
    params.validate();
    ComplexMatrix out = raw;
    fft_rows(out, kFftForward);
    const std::size_t n_rg = out.n_rg();
    std::vector<cplx> fac(n_rg);
    for (std::size_t j = 0; j < n_rg; ++j) {
        double f_t = wrapped_bin_freq(j, n_rg, params.fr);
        fac[j] = phasor(kPi * f_t * f_t / params.beta);
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t az = 0; az < static_cast<std::int64_t>(out.n_az()); ++az) {
        cplx* r = out.row(static_cast<std::size_t>(az));
        for (std::size_t j = 0; j < n_rg; ++j) r[j] *= fac[j];
    }
    fft_rows(out, kFftInverse);
    out.domain = Domain::signal;
    return out;
}

}  // namespace stripsar
