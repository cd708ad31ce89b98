#include <chrono>
#include <cstddef>
#include <iomanip>
#include <iostream>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stripsar/enhance.hpp"
#include "stripsar/fft.hpp"
#include "stripsar/focus.hpp"
#include "stripsar/image.hpp"
#include "stripsar/median.hpp"
#include "stripsar/radar.hpp"
#include "stripsar/reference.hpp"
#include "stripsar/simulate.hpp"

using namespace stripsar;

namespace {

template <class F>
double time_ms(F&& f, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto start = std::chrono::steady_clock::now();
        f();
        auto stop = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(stop - start).count();
        if (ms < best) best = ms;
    }
    return best;
}

GrayImage random_image(std::size_t w, std::size_t h, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pix(0, 255);
    GrayImage img(w, h);
    for (std::size_t i = 0; i < img.size(); ++i)
        img.data()[i] = static_cast<std::uint8_t>(pix(rng));
    return img;
}

void report(const std::string& name, double ms, double baseline_ms = 0.0) {
    std::cout << "  " << std::left << std::setw(44) << name << std::right
              << std::setw(10) << std::fixed << std::setprecision(2) << ms
              << " ms";
    if (baseline_ms > 0.0)
        std::cout << "   (" << std::setprecision(1) << baseline_ms / ms << "x)";
    std::cout << "\n";
}

void bench_median() {
    std::cout << "median filter, 512 x 512, window 9 x 9\n";
    GrayImage img = random_image(512, 512, 1);
    MedianConfig cfg;
    cfg.p = 9;
    cfg.q = 9;

    GrayImage sink;
    double naive =
        time_ms([&] { sink = reference::median_filter_naive(img, cfg); }, 2);
    report("sort every window (serial reference)", naive);
    double hist = time_ms([&] { sink = median_filter(img, cfg); }, 3);
    report("sliding histogram", hist, naive);

#ifdef _OPENMP
    int max_threads = omp_get_max_threads();
    omp_set_num_threads(1);
    double one = time_ms([&] { sink = median_filter(img, cfg); }, 3);
    omp_set_num_threads(max_threads);
    report("sliding histogram, 1 thread", one);
    std::cout << "  (max threads here: " << max_threads << ")\n";
#endif
}

void bench_joint() {
    std::cout << "\ndespeckle + enhance, 1024 x 1024, median 5 x 5, tiles 16 x 16\n";
    GrayImage img = random_image(1024, 1024, 2);
    MedianConfig mcfg;
    mcfg.p = 5;
    mcfg.q = 5;
    ClaheConfig ccfg;

    GrayImage sink;
    HistCounters two{}, one{};
    double two_pass = time_ms(
        [&] {
            two = HistCounters{};
            HistCounters c2{};
            sink = clahe(median_filter(img, mcfg, &two), ccfg, &c2);
            two.builds += c2.builds;
        },
        3);
    report("two passes (median, then tiles)", two_pass);
    double joint =
        time_ms([&] { one = HistCounters{}; sink = joint_denoise_enhance(img, mcfg, ccfg, &one); }, 3);
    report("fused single pass", joint, two_pass);
    std::cout << "  histogram builds: " << two.builds << " vs " << one.builds
              << "\n";
}

void bench_stolt() {
    std::cout << "\nfocusing, 256 x 1024 single point target\n";
    RadarParams params = RadarParams::ers2();
    PointTarget t;
    t.sigma = {1.0, 0.0};
    t.r0 = 830.9e3;
    t.eta_c = 0.0;
    t.aperture_time = 0.14;
    double t0 = 2.0 * t.r0 / kSpeedOfLight - 512.0 / params.fr;
    double eta0 = -128.0 / params.prf;
    ComplexMatrix raw = simulate_raw({t}, params, 256, 1024, t0, eta0);

    FocusConfig cfg;
    cfg.r_ref = t.r0;
    ComplexMatrix sink;
    double kaiser = time_ms([&] { sink = focus(raw, cfg, params); }, 3);
    report("8-tap Kaiser-windowed sinc remap", kaiser);
    cfg.stolt_linear = true;
    double linear = time_ms([&] { sink = focus(raw, cfg, params); }, 3);
    report("2-tap linear remap", linear, kaiser);
}

void bench_fft() {
    std::cout << "\nunitary transform of one 1024-point line\n";
    std::mt19937 rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix row(1, 1024);
    std::vector<cplx> vec(1024);
    for (std::size_t i = 0; i < 1024; ++i) {
        vec[i] = {g(rng), g(rng)};
        row.at(0, i) = vec[i];
    }

    std::vector<cplx> sink;
    double direct =
        time_ms([&] { sink = reference::dft_direct(vec, kFftForward); }, 3);
    report("direct O(n^2) sum (serial reference)", direct);
    ComplexMatrix work = row;
    double fast = time_ms(
        [&] {
            work = row;
            fft_rows(work, kFftForward);
        },
        10);
    report("FFT", fast, direct);
}

}  // namespace

int main() {
    std::cout << "stripsar benchmarks (best of a few runs)\n\n";
    bench_median();
    bench_joint();
    bench_stolt();
    bench_fft();
    return 0;
}
