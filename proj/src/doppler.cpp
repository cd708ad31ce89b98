#include "stripsar/doppler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "stripsar/error.hpp"
#include "stripsar/fft.hpp"
#include "stripsar/focus.hpp"

namespace stripsar {

namespace {

constexpr double kPi = std::numbers::pi;

// Wrap a frequency into (-fs/2, fs/2].
double wrap_baseband(double f, double fs) {
    double g = std::fmod(0.5 * fs - f, fs);
    if (g < 0.0) g += fs;
    return 0.5 * fs - g;
}

// Least-squares polynomial fit on pre-normalized abscissae, solved by
// Gaussian elimination with partial pivoting on the normal equations.
std::vector<double> polyfit(const std::vector<double>& x, const std::vector<double>& y,
                            int order) {
    const int dim = order + 1;
    std::vector<double> a(static_cast<std::size_t>(dim) * dim, 0.0);
    std::vector<double> b(dim, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double powx[16];
        powx[0] = 1.0;
        for (int k = 1; k < 2 * dim - 1 && k < 16; ++k) powx[k] = powx[k - 1] * x[i];
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) a[r * dim + c] += powx[r + c];
            b[r] += powx[r] * y[i];
        }
    }
    for (int col = 0; col < dim; ++col) {
        int piv = col;
        for (int r = col + 1; r < dim; ++r)
            if (std::abs(a[r * dim + col]) > std::abs(a[piv * dim + col])) piv = r;
        if (std::abs(a[piv * dim + col]) < 1e-30)
            throw NumericalError("polyfit: singular normal equations");
        if (piv != col) {
            for (int c = 0; c < dim; ++c) std::swap(a[col * dim + c], a[piv * dim + c]);
            std::swap(b[col], b[piv]);
        }
        for (int r = col + 1; r < dim; ++r) {
            double f = a[r * dim + col] / a[col * dim + col];
            for (int c = col; c < dim; ++c) a[r * dim + c] -= f * a[col * dim + c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> coef(dim, 0.0);
    for (int r = dim - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < dim; ++c) s -= a[r * dim + c] * coef[c];
        coef[r] = s / a[r * dim + r];
    }
    return coef;
}

double polyval(const std::vector<double>& coef, double x) {
    double y = 0.0;
    for (std::size_t k = coef.size(); k-- > 0;) y = y * x + coef[k];
    return y;
}

}  // namespace

std::vector<double> azimuth_power_spectrum(const ComplexMatrix& m) {
    if (m.empty())
        throw std::invalid_argument("azimuth_power_spectrum: empty matrix");
    if (m.domain != Domain::signal)
        throw std::invalid_argument("azimuth_power_spectrum: time-domain input required");
    const std::size_t n_az = m.n_az(), n_rg = m.n_rg();
    if (n_az < 8)
        throw std::invalid_argument("azimuth_power_spectrum: need at least 8 azimuth lines");

    ComplexMatrix spec = m;
    fft_cols(spec, kFftForward);

    std::vector<double> avg(n_az, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(n_az); ++k) {
        const cplx* row = spec.row(static_cast<std::size_t>(k));
        double acc = 0.0;
        for (std::size_t j = 0; j < n_rg; ++j) acc += std::norm(row[j]);
        avg[static_cast<std::size_t>(k)] = acc / static_cast<double>(n_rg);
    }
    return avg;
}

double estimate_fdc_amplitude(const std::vector<double>& spectrum, double prf,
                              std::size_t fit_halfwidth_bins, int poly_order) {
    const std::size_t n = spectrum.size();
    if (n < 8)
        throw std::invalid_argument("estimate_fdc_amplitude: need at least 8 bins");
    if (!(prf > 0.0))
        throw std::invalid_argument("estimate_fdc_amplitude: prf must be positive");
    if (poly_order != 2 && poly_order != 4)
        throw std::invalid_argument("estimate_fdc_amplitude: poly_order must be 2 or 4");
    if (fit_halfwidth_bins < 1 || 2 * fit_halfwidth_bins + 1 > n)
        throw std::invalid_argument("estimate_fdc_amplitude: fit_halfwidth_bins out of range");
    if (2 * fit_halfwidth_bins + 1 < static_cast<std::size_t>(poly_order) + 1)
        throw std::invalid_argument("estimate_fdc_amplitude: too few points for poly_order");

    // Circular 3-bin smoothing.
    std::vector<double> sm(n);
    for (std::size_t k = 0; k < n; ++k) {
        double a = spectrum[(k + n - 1) % n];
        double b = spectrum[k];
        double c = spectrum[(k + 1) % n];
        sm[k] = (a + b + c) / 3.0;
    }

    std::size_t k_peak = 0;
    double peak = sm[0], mean = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mean += sm[k];
        if (sm[k] > peak) {
            peak = sm[k];
            k_peak = k;
        }
    }
    mean /= static_cast<double>(n);
    if (!(peak > 1.1 * mean))
        throw NumericalError("estimate_fdc_amplitude: no discernible Doppler peak");

    // Fit around the peak on abscissae normalized to [-1, 1].
    const std::int64_t hw = static_cast<std::int64_t>(fit_halfwidth_bins);
    std::vector<double> xs, ys;
    xs.reserve(2 * fit_halfwidth_bins + 1);
    ys.reserve(2 * fit_halfwidth_bins + 1);
    for (std::int64_t d = -hw; d <= hw; ++d) {
        std::size_t k = static_cast<std::size_t>(
            ((static_cast<std::int64_t>(k_peak) + d) % static_cast<std::int64_t>(n) +
             static_cast<std::int64_t>(n)) %
            static_cast<std::int64_t>(n));
        xs.push_back(static_cast<double>(d) / static_cast<double>(hw));
        ys.push_back(sm[k]);
    }
    std::vector<double> coef = polyfit(xs, ys, poly_order);

    // Dense evaluation over the fit window.
    const int steps = 128 * static_cast<int>(fit_halfwidth_bins);
    double best_x = -1.0, best_y = polyval(coef, -1.0);
    for (int i = 1; i <= steps; ++i) {
        double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(steps);
        double y = polyval(coef, x);
        if (y > best_y) {
            best_y = y;
            best_x = x;
        }
    }

    double bin = static_cast<double>(k_peak) + best_x * static_cast<double>(hw);
    return wrap_baseband(bin * prf / static_cast<double>(n), prf);
}

double estimate_fdc_accc(const ComplexMatrix& m, double prf, double* angle_out) {
    if (m.empty())
        throw std::invalid_argument("estimate_fdc_accc: empty matrix");
    if (m.domain != Domain::signal)
        throw std::invalid_argument("estimate_fdc_accc: time-domain input required");
    if (m.n_az() < 2)
        throw std::invalid_argument("estimate_fdc_accc: need at least 2 azimuth lines");
    if (!(prf > 0.0))
        throw std::invalid_argument("estimate_fdc_accc: prf must be positive");

    const std::size_t n_az = m.n_az(), n_rg = m.n_rg();
    std::vector<cplx> partial(n_az - 1);
#pragma omp parallel for schedule(static)
    for (std::int64_t az = 0; az < static_cast<std::int64_t>(n_az - 1); ++az) {
        const cplx* a = m.row(static_cast<std::size_t>(az));
        const cplx* b = m.row(static_cast<std::size_t>(az) + 1);
        cplx acc = 0.0;
        for (std::size_t j = 0; j < n_rg; ++j) acc += std::conj(a[j]) * b[j];
        partial[static_cast<std::size_t>(az)] = acc;
    }
    cplx corr = 0.0;
    for (const cplx& p : partial) corr += p;

    if (std::abs(corr) == 0.0)
        throw NumericalError("estimate_fdc_accc: undefined correlation angle");
    double angle = std::arg(corr);
    if (angle_out) *angle_out = angle;
    return prf * angle / (2.0 * kPi);
}

double combine_estimates(double fdc_amplitude, double fdc_phase) {
    return 0.5 * (fdc_amplitude + fdc_phase);
}

double squint_angle_deg(double fdc, const RadarParams& params) {
    params.validate();
    double s = fdc * params.wavelength() / (2.0 * params.v);
    if (std::abs(s) > 1.0)
        throw NumericalError("squint_angle_deg: |fdc * lambda / 2v| exceeds 1");
    return std::asin(s) * 180.0 / kPi;
}

DopplerEstimate estimate_doppler(const ComplexMatrix& raw, const RadarParams& params) {
    params.validate();
    std::vector<double> spectrum = azimuth_power_spectrum(raw);

    std::size_t hw = raw.n_az() / 8;
    int order = hw >= 2 ? 4 : 2;
    DopplerEstimate est;
    est.fdc_amplitude = estimate_fdc_amplitude(spectrum, params.prf, hw, order);

    ComplexMatrix rc = range_compress(raw, params);
    est.fdc_phase = estimate_fdc_accc(rc, params.prf, &est.accc_angle);

    est.fdc_combined = combine_estimates(est.fdc_amplitude, est.fdc_phase);
    est.squint_deg = squint_angle_deg(est.fdc_combined, params);
    est.n_range_cells = raw.n_rg();
    return est;
}

}  // namespace stripsar
