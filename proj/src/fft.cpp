#include "stripsar/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace stripsar {

namespace {

// Plan cache keyed by (length, stride, sign). Plans are created once under
// a lock (fftw planning is not thread-safe) and then executed concurrently
// through the new-array interface, which is. FFTW_UNALIGNED keeps plans
// valid for any std::vector buffer.
class PlanCache {
  public:
    fftw_plan get(int n, int stride, int sign, fftw_complex* buf) {
        std::scoped_lock lock(mu_);
        auto key = std::make_tuple(n, stride, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        fftw_plan p = fftw_plan_many_dft(1, &n, 1, buf, nullptr, stride, 0, buf,
                                         nullptr, stride, 0, sign,
                                         FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw std::runtime_error("fftw_plan_many_dft failed");
        plans_.emplace(key, p);
        return p;
    }

  private:
    std::mutex mu_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void scale_all(ComplexMatrix& m, double s) {
    cplx* d = m.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(m.size()); ++i) d[i] *= s;
}

}  // namespace

void fft_rows(ComplexMatrix& m, int sign) {
    if (m.empty()) throw std::invalid_argument("fft_rows: empty matrix");
    if (sign != kFftForward && sign != kFftInverse)
        throw std::invalid_argument("fft_rows: sign must be -1 or +1");
    const int n = static_cast<int>(m.n_rg());
    fftw_plan plan = cache().get(n, 1, sign, reinterpret_cast<fftw_complex*>(m.row(0)));
#pragma omp parallel for schedule(static)
    for (std::int64_t az = 0; az < static_cast<std::int64_t>(m.n_az()); ++az) {
        fftw_complex* r = reinterpret_cast<fftw_complex*>(m.row(static_cast<std::size_t>(az)));
        fftw_execute_dft(plan, r, r);
    }
    scale_all(m, 1.0 / std::sqrt(static_cast<double>(n)));
}

void fft_cols(ComplexMatrix& m, int sign) {
    if (m.empty()) throw std::invalid_argument("fft_cols: empty matrix");
    if (sign != kFftForward && sign != kFftInverse)
        throw std::invalid_argument("fft_cols: sign must be -1 or +1");
    const int n = static_cast<int>(m.n_az());
    const int stride = static_cast<int>(m.n_rg());
    fftw_plan plan = cache().get(n, stride, sign, reinterpret_cast<fftw_complex*>(m.data()));
#pragma omp parallel for schedule(static)
    for (std::int64_t rg = 0; rg < static_cast<std::int64_t>(m.n_rg()); ++rg) {
        fftw_complex* c = reinterpret_cast<fftw_complex*>(m.data() + rg);
        fftw_execute_dft(plan, c, c);
    }
    scale_all(m, 1.0 / std::sqrt(static_cast<double>(n)));
}

double wrapped_bin_freq(std::size_t k, std::size_t n, double fs) {
    double f = static_cast<double>(k) * fs / static_cast<double>(n);
    if (2 * k > n) f -= fs;
    return f;
}

double centered_bin_freq(std::size_t k, std::size_t n, double fs, double center) {
    double f0 = static_cast<double>(k) * fs / static_cast<double>(n);
    double m = std::ceil((center - f0) / fs - 0.5);
    return f0 + m * fs;
}

}  // namespace stripsar
