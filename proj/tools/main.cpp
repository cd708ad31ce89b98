#include <algorithm>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "stripsar/complex_matrix.hpp"
#include "stripsar/doppler.hpp"
#include "stripsar/enhance.hpp"
#include "stripsar/error.hpp"
#include "stripsar/fft.hpp"
#include "stripsar/focus.hpp"
#include "stripsar/image.hpp"
#include "stripsar/io.hpp"
#include "stripsar/median.hpp"
#include "stripsar/metrics.hpp"
#include "stripsar/radar.hpp"
#include "stripsar/simulate.hpp"

using namespace stripsar;

namespace {

// One --set key=value override, using the sidecar key names.
void apply_override(Sidecar& sc, const std::string& kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
        throw CLI::ValidationError("--set", "expected key=value, got: " + kv);
    std::string key = kv.substr(0, eq);
    std::string val = kv.substr(eq + 1);
    auto num = [&] {
        std::size_t pos = 0;
        double d = 0.0;
        try {
            d = std::stod(val, &pos);
        } catch (...) {
            pos = 0;
        }
        if (pos != val.size() || val.empty())
            throw CLI::ValidationError("--set", key + ": bad number: " + val);
        return d;
    };
    auto count = [&] {
        double d = num();
        if (d < 1.0 || d != std::floor(d))
            throw CLI::ValidationError("--set", key + ": must be a positive integer");
        return static_cast<std::size_t>(d);
    };
    if (key == "fc_hz") sc.params.fc = num();
    else if (key == "fr_hz") sc.params.fr = num();
    else if (key == "prf_hz") sc.params.prf = num();
    else if (key == "beta_hz_per_s") sc.params.beta = num();
    else if (key == "chirp_s") sc.params.chirp = num();
    else if (key == "v_mps") sc.params.v = num();
    else if (key == "bandwidth_hz") sc.params.bandwidth = num();
    else if (key == "r0_m") sc.params.r0 = num();
    else if (key == "n_az") sc.n_az = count();
    else if (key == "n_rg") sc.n_rg = count();
    else if (key == "sample_format") sc.sample_format = val;
    else if (key == "sample_offset") sc.sample_offset = num();
    else throw CLI::ValidationError("--set", "unknown key: " + key);
}

// Loads the sidecar, applies --set overrides, and reports (on stderr) when
// the chirp rate disagrees with bandwidth/duration; the file is still
// accepted.
Sidecar load_params(const std::string& path, const std::vector<std::string>& sets) {
    Sidecar sc = load_sidecar(path);
    for (const std::string& kv : sets) apply_override(sc, kv);
    if (sc.sample_format != "f32" && sc.sample_format != "i16" &&
        sc.sample_format != "i8")
        throw CLI::ValidationError("--set",
                                   "sample_format must be f32, i16, or i8");
    sc.params.validate();
    std::string warn = sc.params.consistency_warning();
    if (!warn.empty()) std::cerr << "warning: " << path << ": " << warn << "\n";
    return sc;
}

void attach_set_flag(CLI::App* sub, std::vector<std::string>& sets) {
    sub->add_option("--set", sets,
                    "override a sidecar value, e.g. --set prf_hz=1700 "
                    "(repeatable; sidecar key names)");
}

// Output path convention: "-" selects standard output.
void emit_pgm(const std::string& path, const GrayImage& img) {
    if (path == "-")
        write_pgm(std::cout, img);
    else
        write_pgm(path, img);
}

void emit_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw FormatError(path + ": cannot open for writing");
    f << text;
    if (!f) throw FormatError(path + ": write failed");
}

double scene_center_range(const ComplexMatrix& m, const RadarParams& params) {
    double r_first = kSpeedOfLight * m.t0 / 2.0;
    double swath = double(m.n_rg()) * kSpeedOfLight / (2.0 * params.fr);
    return r_first + swath / 2.0;
}

GrayScaling parse_scaling(const std::string& s) {
    return s == "max" ? GrayScaling::linear_max : GrayScaling::percentile;
}

// Shared flag bundles.

struct FocusFlags {
    std::optional<double> rref;
    std::optional<double> fdc;
    std::size_t stolt_taps = 8;
    double stolt_beta = 5.0;
    bool stolt_linear = false;

    void attach(CLI::App* sub) {
        sub->add_option("--rref", rref,
                        "reference slant range [m] (default: scene center)");
        sub->add_option("--fdc", fdc,
                        "Doppler centroid [Hz] (default: estimate from the data)");
        sub->add_option("--stolt-taps", stolt_taps,
                        "interpolation kernel taps (even, 4..64)")
            ->capture_default_str();
        sub->add_option("--stolt-beta", stolt_beta, "Kaiser window shape")
            ->capture_default_str();
        sub->add_flag("--stolt-linear", stolt_linear,
                      "2-tap linear interpolation instead of the windowed sinc");
    }

    FocusConfig config(const ComplexMatrix& raw, const RadarParams& params) const {
        FocusConfig cfg;
        cfg.r_ref = rref ? *rref : scene_center_range(raw, params);
        cfg.stolt_kernel_len = stolt_taps;
        cfg.stolt_window_beta = stolt_beta;
        cfg.stolt_linear = stolt_linear;
        if (fdc) {
            cfg.fdc = *fdc;
        } else {
            DopplerEstimate est = estimate_doppler(raw, params);
            std::cerr << "info: estimated fdc_combined = " << est.fdc_combined
                      << " Hz (amplitude " << est.fdc_amplitude << ", phase "
                      << est.fdc_phase << ")\n";
            cfg.fdc = est.fdc_combined;
        }
        cfg.validate();
        return cfg;
    }
};

struct GrayFlags {
    std::string scale = "percentile";
    double percentile = 99.9;

    void attach(CLI::App* sub) {
        sub->add_option("--scale", scale, "gray reference level")
            ->check(CLI::IsMember({"percentile", "max"}))
            ->capture_default_str();
        sub->add_option("--percentile", percentile,
                        "percentile used when --scale percentile")
            ->capture_default_str();
    }

    GrayImage to_gray(const ComplexMatrix& m) const {
        return magnitude_to_gray(m, parse_scaling(scale), percentile);
    }
};

struct ClaheFlags {
    std::vector<std::size_t> tile{16, 16};
    double clip = 4.0;
    std::string blend = "independent";

    void attach(CLI::App* sub) {
        sub->add_option("--tile", tile, "tile width and height [px]")
            ->expected(2)
            ->capture_default_str();
        sub->add_option("--clip", clip,
                        "clip limit as a multiple of the uniform bin level")
            ->capture_default_str();
        sub->add_option("--blend", blend, "tile blending mode")
            ->check(CLI::IsMember({"independent", "bilinear"}))
            ->capture_default_str();
    }

    ClaheConfig config() const {
        ClaheConfig cfg;
        cfg.tile_w = tile.at(0);
        cfg.tile_h = tile.at(1);
        cfg.clip_limit = clip;
        cfg.blend = blend == "bilinear" ? TileBlend::bilinear : TileBlend::independent;
        cfg.validate();
        return cfg;
    }
};

std::string histogram_csv(const GrayImage& before, const GrayImage& after) {
    std::size_t in_counts[256] = {0}, out_counts[256] = {0};
    for (std::size_t i = 0; i < before.size(); ++i) ++in_counts[before.data()[i]];
    for (std::size_t i = 0; i < after.size(); ++i) ++out_counts[after.data()[i]];
    std::ostringstream os;
    os << "bin,count_in,count_out\n";
    for (int b = 0; b < 256; ++b)
        os << b << "," << in_counts[b] << "," << out_counts[b] << "\n";
    return os.str();
}

// ---- subcommands ----

struct SimulateCmd {
    std::string params_path, scene_path, out_path, sidecar_out;
    std::vector<std::string> sets;
    std::optional<double> t0_opt;
    std::optional<std::size_t> n_az_opt, n_rg_opt;
    double fdc_inject = 0.0;

    void attach(CLI::App& app) {
        CLI::App* sub = app.add_subcommand(
            "simulate", "synthesize raw echoes from a point-target scene");
        sub->add_option("--params", params_path, "parameter sidecar")->required();
        sub->add_option("--scene", scene_path,
                        "scene file: sigma_re sigma_im r0_m eta_c_s aperture_s per line")
            ->required();
        sub->add_option("--out", out_path, "output raw I/Q file (f32)")->required();
        sub->add_option("--sidecar-out", sidecar_out,
                        "where to write the matching sidecar (default: <out>.params)");
        sub->add_option("--t0", t0_opt,
                        "fast time of the first range sample [s] "
                        "(default: 2 r0_m / c from the sidecar)");
        sub->add_option("--n-az", n_az_opt, "azimuth line count override");
        sub->add_option("--n-rg", n_rg_opt, "range bin count override");
        sub->add_option("--fdc", fdc_inject,
                        "Doppler centroid to inject as an azimuth phase ramp [Hz]")
            ->capture_default_str();
        attach_set_flag(sub, sets);
    }

    int run() const {
        Sidecar sc = load_params(params_path, sets);
        if (n_az_opt) sc.n_az = *n_az_opt;
        if (n_rg_opt) sc.n_rg = *n_rg_opt;
        std::vector<PointTarget> targets = load_scene(scene_path);
        double t0 = t0_opt ? *t0_opt : sc.t0();

        ComplexMatrix raw =
            simulate_raw(targets, sc.params, sc.n_az, sc.n_rg, t0, 0.0, fdc_inject);
        write_raw_f32(out_path, raw);

        Sidecar out_sc = sc;
        out_sc.params.r0 = kSpeedOfLight * t0 / 2.0;
        out_sc.sample_format = "f32";
        out_sc.sample_offset = 0.0;
        std::string side = sidecar_out.empty() ? out_path + ".params" : sidecar_out;
        save_sidecar(side, out_sc);
        std::cerr << "info: wrote " << sc.n_az << " x " << sc.n_rg << " raw grid to "
                  << out_path << " (sidecar " << side << ")\n";
        return 0;
    }
};

struct DopplerCmd {
    std::string params_path, raw_path, spectrum_csv;
    std::vector<std::string> sets;

    void attach(CLI::App& app) {
        CLI::App* sub = app.add_subcommand(
            "doppler", "estimate the Doppler centroid from raw echoes");
        sub->add_option("--params", params_path, "parameter sidecar")->required();
        sub->add_option("--raw", raw_path, "raw I/Q file")->required();
        sub->add_option("--spectrum-csv", spectrum_csv,
                        "also write the averaged azimuth power spectrum "
                        "(frequency_hz,power), - for stdout");
        attach_set_flag(sub, sets);
    }

    int run() const {
        Sidecar sc = load_params(params_path, sets);
        ComplexMatrix raw = read_raw(raw_path, sc);
        DopplerEstimate est = estimate_doppler(raw, sc.params);

        std::cout << std::setprecision(12)
                  << "fdc_amplitude=" << est.fdc_amplitude << "\n"
                  << "fdc_phase=" << est.fdc_phase << "\n"
                  << "fdc_combined=" << est.fdc_combined << "\n"
                  << "accc_angle=" << est.accc_angle << "\n"
                  << "squint_deg=" << est.squint_deg << "\n";

        if (!spectrum_csv.empty()) {
            std::vector<double> spec = azimuth_power_spectrum(raw);
            std::vector<std::pair<double, double>> rows;
            rows.reserve(spec.size());
            for (std::size_t k = 0; k < spec.size(); ++k)
                rows.emplace_back(wrapped_bin_freq(k, spec.size(), sc.params.prf),
                                  spec[k]);
            std::sort(rows.begin(), rows.end());
            std::ostringstream os;
            os << std::setprecision(12) << "frequency_hz,power\n";
            for (const auto& [f, p] : rows) os << f << "," << p << "\n";
            emit_text(spectrum_csv, os.str());
        }
        return 0;
    }
};

struct FocusCmd {
    std::string params_path, raw_path, out_path, pgm_path;
    std::vector<std::string> sets;
    FocusFlags focus_flags;
    GrayFlags gray_flags;

    void attach(CLI::App& app) {
        CLI::App* sub =
            app.add_subcommand("focus", "form a single-look complex image");
        sub->add_option("--params", params_path, "parameter sidecar")->required();
        sub->add_option("--raw", raw_path, "raw I/Q file")->required();
        sub->add_option("--out", out_path, "output complex image container");
        sub->add_option("--pgm", pgm_path, "output quick-look PGM, - for stdout");
        focus_flags.attach(sub);
        gray_flags.attach(sub);
        attach_set_flag(sub, sets);
    }

    int run() const {
        if (out_path.empty() && pgm_path.empty())
            throw CLI::ValidationError("focus", "give --out and/or --pgm");
        Sidecar sc = load_params(params_path, sets);
        ComplexMatrix raw = read_raw(raw_path, sc);
        FocusConfig cfg = focus_flags.config(raw, sc.params);

        StoltStats stats;
        ComplexMatrix img = focus(raw, cfg, sc.params, &stats);
        if (stats.evanescent_bins > 0)
            std::cerr << "info: " << stats.evanescent_bins
                      << " spectrum bins had no propagating support ("
                      << stats.occupied_evanescent << " carried energy)\n";

        if (!out_path.empty()) write_complex(out_path, img);
        if (!pgm_path.empty()) emit_pgm(pgm_path, gray_flags.to_gray(img));
        return 0;
    }
};

struct DenoiseCmd {
    std::string in_path, out_path;
    std::size_t p = 16, q = 16;

    void attach(CLI::App& app) {
        CLI::App* sub =
            app.add_subcommand("denoise", "sliding-window median despeckle");
        sub->add_option("--in", in_path, "input PGM")->required();
        sub->add_option("--out", out_path, "output PGM, - for stdout")->required();
        sub->add_option("--p", p, "window width [px]")->capture_default_str();
        sub->add_option("--q", q, "window height [px]")->capture_default_str();
    }

    int run() const {
        GrayImage img = read_pgm(in_path);
        MedianConfig cfg;
        cfg.p = p;
        cfg.q = q;
        emit_pgm(out_path, median_filter(img, cfg));
        return 0;
    }
};

struct EnhanceCmd {
    std::string in_path, out_path, mode = "clahe", hist_csv;
    ClaheFlags clahe_flags;

    void attach(CLI::App& app) {
        CLI::App* sub = app.add_subcommand("enhance", "contrast enhancement");
        sub->add_option("--in", in_path, "input PGM")->required();
        sub->add_option("--out", out_path, "output PGM, - for stdout")->required();
        sub->add_option("--mode", mode, "he = global equalization, clahe = tiled")
            ->check(CLI::IsMember({"he", "clahe"}))
            ->capture_default_str();
        clahe_flags.attach(sub);
        sub->add_option("--histogram-csv", hist_csv,
                        "write 256-bin histograms before/after "
                        "(bin,count_in,count_out), - for stdout");
    }

    int run() const {
        GrayImage img = read_pgm(in_path);
        GrayImage out = mode == "he" ? equalize(img) : clahe(img, clahe_flags.config());
        emit_pgm(out_path, out);
        if (!hist_csv.empty()) emit_text(hist_csv, histogram_csv(img, out));
        return 0;
    }
};

struct PipelineCmd {
    std::string params_path, raw_path, out_path, cimg_out;
    std::vector<std::string> sets;
    FocusFlags focus_flags;
    GrayFlags gray_flags;
    ClaheFlags clahe_flags;
    std::size_t p = 16, q = 16;

    void attach(CLI::App& app) {
        CLI::App* sub = app.add_subcommand(
            "pipeline", "raw echoes to enhanced image in one pass");
        sub->add_option("--params", params_path, "parameter sidecar")->required();
        sub->add_option("--raw", raw_path, "raw I/Q file")->required();
        sub->add_option("--out", out_path, "output PGM, - for stdout")->required();
        sub->add_option("--cimg-out", cimg_out,
                        "also save the focused complex image");
        focus_flags.attach(sub);
        gray_flags.attach(sub);
        sub->add_option("--p", p, "median window width [px]")->capture_default_str();
        sub->add_option("--q", q, "median window height [px]")->capture_default_str();
        clahe_flags.attach(sub);
        attach_set_flag(sub, sets);
    }

    int run() const {
        Sidecar sc = load_params(params_path, sets);
        ComplexMatrix raw = read_raw(raw_path, sc);
        FocusConfig cfg = focus_flags.config(raw, sc.params);
        ComplexMatrix img = focus(raw, cfg, sc.params);
        if (!cimg_out.empty()) write_complex(cimg_out, img);

        GrayImage gray = gray_flags.to_gray(img);
        MedianConfig mcfg;
        mcfg.p = p;
        mcfg.q = q;
        HistCounters counters;
        GrayImage enhanced =
            joint_denoise_enhance(gray, mcfg, clahe_flags.config(), &counters);
        std::cerr << "info: joint pass used " << counters.builds
                  << " histogram builds\n";
        emit_pgm(out_path, enhanced);
        return 0;
    }
};

struct SweepCmd {
    std::string in_path, out_path;
    std::size_t min_size = 2, max_size = 20;

    void attach(CLI::App& app) {
        CLI::App* sub = app.add_subcommand(
            "psnr-sweep", "PSNR of the median filter over square window sizes");
        sub->add_option("--in", in_path, "input PGM (scored against itself filtered)")
            ->required();
        sub->add_option("--out", out_path, "output CSV (p,q,psnr_db), - for stdout")
            ->required();
        sub->add_option("--min", min_size, "smallest window side")
            ->capture_default_str();
        sub->add_option("--max", max_size, "largest window side")
            ->capture_default_str();
    }

    int run() const {
        if (min_size < 1 || max_size < min_size)
            throw CLI::ValidationError("psnr-sweep", "need 1 <= min <= max");
        GrayImage img = read_pgm(in_path);
        std::vector<std::pair<std::size_t, std::size_t>> sizes;
        for (std::size_t s = min_size; s <= max_size; ++s) sizes.emplace_back(s, s);
        std::vector<SweepPoint> points = psnr_sweep(img, sizes);
        std::ostringstream os;
        os << std::setprecision(12) << "p,q,psnr_db\n";
        for (const SweepPoint& pt : points)
            os << pt.p << "," << pt.q << "," << pt.psnr_db << "\n";
        emit_text(out_path, os.str());
        return 0;
    }
};

struct MetricsCmd {
    std::string a_path, b_path;

    void attach(CLI::App& app) {
        CLI::App* sub =
            app.add_subcommand("metrics", "MSE and PSNR between two images");
        sub->add_option("--a", a_path, "first PGM")->required();
        sub->add_option("--b", b_path, "second PGM")->required();
    }

    int run() const {
        GrayImage a = read_pgm(a_path);
        GrayImage b = read_pgm(b_path);
        std::cout << std::setprecision(12) << "mse=" << mse(a, b) << "\n"
                  << "psnr_db=" << psnr(a, b) << "\n";
        return 0;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"strip-map SAR toolkit: simulation, Doppler-centroid "
                 "estimation, wavenumber-domain focusing, despeckle, "
                 "contrast enhancement"};
    app.require_subcommand(1);

    SimulateCmd sim;
    DopplerCmd dop;
    FocusCmd foc;
    DenoiseCmd den;
    EnhanceCmd enh;
    PipelineCmd pipe;
    SweepCmd sweep;
    MetricsCmd met;
    sim.attach(app);
    dop.attach(app);
    foc.attach(app);
    den.attach(app);
    enh.attach(app);
    pipe.attach(app);
    sweep.attach(app);
    met.attach(app);

    try {
        app.parse(argc, argv);
        if (app.got_subcommand("simulate")) return sim.run();
        if (app.got_subcommand("doppler")) return dop.run();
        if (app.got_subcommand("focus")) return foc.run();
        if (app.got_subcommand("denoise")) return den.run();
        if (app.got_subcommand("enhance")) return enh.run();
        if (app.got_subcommand("pipeline")) return pipe.run();
        if (app.got_subcommand("psnr-sweep")) return sweep.run();
        if (app.got_subcommand("metrics")) return met.run();
        return 1;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
