#include "stripsar/enhance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace stripsar {

void ClaheConfig::validate() const {
    if (tile_w == 0 || tile_h == 0)
        throw std::invalid_argument("clahe: tile sides must be >= 1");
    if (!(clip_limit > 0.0))
        throw std::invalid_argument("clahe: clip_limit must be positive");
}

std::array<std::uint8_t, 256> equalize_lut(const Histogram256& h) {
    std::array<std::uint8_t, 256> lut{};
    std::uint64_t cdf_min = 0;
    for (int v = 0; v < 256; ++v) {
        if (h.counts[v] != 0) {
            cdf_min = h.counts[v];
            break;
        }
    }
    std::uint64_t denom = h.total - cdf_min;
    if (denom == 0) {
        for (int v = 0; v < 256; ++v) lut[v] = static_cast<std::uint8_t>(v);
        return lut;
    }
    std::uint64_t cdf = 0;
    for (int v = 0; v < 256; ++v) {
        cdf += h.counts[v];
        double t = 255.0 * (static_cast<double>(cdf) - static_cast<double>(cdf_min)) /
                   static_cast<double>(denom);
        lut[v] = static_cast<std::uint8_t>(std::clamp<long>(std::lround(t), 0, 255));
    }
    return lut;
}

namespace {

struct TileRect {
    std::size_t x0, x1, y0, y1;  // half-open pixel bounds
    std::size_t pixels() const { return (x1 - x0) * (y1 - y0); }
    double cx() const { return (static_cast<double>(x0) + static_cast<double>(x1) - 1.0) / 2.0; }
    double cy() const { return (static_cast<double>(y0) + static_cast<double>(y1) - 1.0) / 2.0; }
};

struct TileGrid {
    std::size_t n_tx, n_ty;
    std::size_t tile_w, tile_h;
    std::size_t img_w, img_h;
    TileRect rect(std::size_t tx, std::size_t ty) const {
        TileRect r;
        r.x0 = tx * tile_w;
        r.x1 = std::min(r.x0 + tile_w, img_w);
        r.y0 = ty * tile_h;
        r.y1 = std::min(r.y0 + tile_h, img_h);
        return r;
    }
};

TileGrid make_grid(const GrayImage& img, const ClaheConfig& cfg) {
    TileGrid g;
    g.tile_w = cfg.tile_w;
    g.tile_h = cfg.tile_h;
    g.img_w = img.width();
    g.img_h = img.height();
    g.n_tx = (img.width() + cfg.tile_w - 1) / cfg.tile_w;
    g.n_ty = (img.height() + cfg.tile_h - 1) / cfg.tile_h;
    return g;
}

std::uint64_t clip_count_for(const ClaheConfig& cfg, std::size_t tile_pixels) {
    double raw = cfg.clip_limit * static_cast<double>(tile_pixels) / 256.0;
    long long c = std::llround(raw);
    return static_cast<std::uint64_t>(std::max(1LL, c));
}

Histogram256 build_tile_hist(const GrayImage& img, const TileRect& r) {
    Histogram256 h;
    for (std::size_t y = r.y0; y < r.y1; ++y)
        for (std::size_t x = r.x0; x < r.x1; ++x)
            h.add(img.at(x, y));
    return h;
}

// Transform for one tile histogram: identity for single-level tiles,
// otherwise clipped equalization.
std::array<std::uint8_t, 256> tile_lut(const Histogram256& h, const ClaheConfig& cfg,
                                       std::size_t tile_pixels) {
    if (h.occupied() <= 1) {
        std::array<std::uint8_t, 256> lut{};
        for (int v = 0; v < 256; ++v) lut[v] = static_cast<std::uint8_t>(v);
        return lut;
    }
    return equalize_lut(clip_histogram(h, clip_count_for(cfg, tile_pixels)));
}

void apply_bilinear(const GrayImage& src, GrayImage& dst, const TileGrid& g,
                    const std::vector<std::array<std::uint8_t, 256>>& luts) {
    std::vector<double> cxs(g.n_tx), cys(g.n_ty);
    for (std::size_t tx = 0; tx < g.n_tx; ++tx) cxs[tx] = g.rect(tx, 0).cx();
    for (std::size_t ty = 0; ty < g.n_ty; ++ty) cys[ty] = g.rect(0, ty).cy();

#pragma omp parallel for schedule(static)
    for (std::int64_t y = 0; y < static_cast<std::int64_t>(g.img_h); ++y) {
        std::size_t ty0 = 0, ty1 = 0;
        double wy = 0.0;
        double yd = static_cast<double>(y);
        if (yd <= cys.front()) {
            ty0 = ty1 = 0;
        } else if (yd >= cys.back()) {
            ty0 = ty1 = g.n_ty - 1;
        } else {
            while (cys[ty0 + 1] <= yd) ++ty0;
            ty1 = ty0 + 1;
            wy = (yd - cys[ty0]) / (cys[ty1] - cys[ty0]);
        }
        for (std::size_t x = 0; x < g.img_w; ++x) {
            std::size_t tx0 = 0, tx1 = 0;
            double wx = 0.0;
            double xd = static_cast<double>(x);
            if (xd <= cxs.front()) {
                tx0 = tx1 = 0;
            } else if (xd >= cxs.back()) {
                tx0 = tx1 = g.n_tx - 1;
            } else {
                while (cxs[tx0 + 1] <= xd) ++tx0;
                tx1 = tx0 + 1;
                wx = (xd - cxs[tx0]) / (cxs[tx1] - cxs[tx0]);
            }
            std::uint8_t v = src.at(x, static_cast<std::size_t>(y));
            double v00 = luts[ty0 * g.n_tx + tx0][v];
            double v01 = luts[ty0 * g.n_tx + tx1][v];
            double v10 = luts[ty1 * g.n_tx + tx0][v];
            double v11 = luts[ty1 * g.n_tx + tx1][v];
            double top = (1.0 - wx) * v00 + wx * v01;
            double bot = (1.0 - wx) * v10 + wx * v11;
            double blended = (1.0 - wy) * top + wy * bot;
            dst.at(x, static_cast<std::size_t>(y)) = static_cast<std::uint8_t>(
                std::clamp<long>(std::lround(blended), 0, 255));
        }
    }
}

}  // namespace

GrayImage equalize(const GrayImage& img) {
    if (img.empty())
        throw std::invalid_argument("equalize: empty image");
    Histogram256 h;
    for (std::size_t i = 0; i < img.size(); ++i) h.add(img.data()[i]);
    auto lut = equalize_lut(h);
    GrayImage out(img.width(), img.height());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(img.size()); ++i)
        out.data()[i] = lut[img.data()[i]];
    return out;
}

GrayImage clahe(const GrayImage& img, const ClaheConfig& cfg, HistCounters* counters) {
    cfg.validate();
    if (img.empty())
        throw std::invalid_argument("clahe: empty image");
    const TileGrid g = make_grid(img, cfg);
    const std::size_t n_tiles = g.n_tx * g.n_ty;
    GrayImage out(img.width(), img.height());
    HistCounters total{};

    std::vector<std::array<std::uint8_t, 256>> luts(
        cfg.blend == TileBlend::bilinear ? n_tiles : 0);

#pragma omp parallel
    {
        HistCounters local{};
#pragma omp for schedule(static)
        for (std::int64_t t = 0; t < static_cast<std::int64_t>(n_tiles); ++t) {
            std::size_t tx = static_cast<std::size_t>(t) % g.n_tx;
            std::size_t ty = static_cast<std::size_t>(t) / g.n_tx;
            TileRect r = g.rect(tx, ty);
            Histogram256 h = build_tile_hist(img, r);
            local.builds += 1;
            auto lut = tile_lut(h, cfg, r.pixels());
            if (cfg.blend == TileBlend::bilinear) {
                luts[static_cast<std::size_t>(t)] = lut;
            } else {
                for (std::size_t y = r.y0; y < r.y1; ++y)
                    for (std::size_t x = r.x0; x < r.x1; ++x)
                        out.at(x, y) = lut[img.at(x, y)];
            }
        }
#pragma omp critical
        {
            total.builds += local.builds;
            total.inserts += local.inserts;
            total.removes += local.removes;
        }
    }

    if (cfg.blend == TileBlend::bilinear) apply_bilinear(img, out, g, luts);

    if (counters) {
        counters->builds += total.builds;
        counters->inserts += total.inserts;
        counters->removes += total.removes;
    }
    return out;
}

GrayImage joint_denoise_enhance(const GrayImage& img, const MedianConfig& mcfg,
                                const ClaheConfig& ccfg, HistCounters* counters) {
    mcfg.validate(img);
    ccfg.validate();
    const TileGrid g = make_grid(img, ccfg);
    const std::size_t n_tiles = g.n_tx * g.n_ty;
    const std::int64_t w = static_cast<std::int64_t>(img.width());
    const std::int64_t h = static_cast<std::int64_t>(img.height());
    const std::int64_t p = static_cast<std::int64_t>(mcfg.p);
    const std::int64_t q = static_cast<std::int64_t>(mcfg.q);
    const std::int64_t ax = (p - 1) / 2;
    const std::int64_t ay = (q - 1) / 2;

    GrayImage out(img.width(), img.height());
    HistCounters total{};

    std::vector<std::array<std::uint8_t, 256>> luts(
        ccfg.blend == TileBlend::bilinear ? n_tiles : 0);

    auto clamp_x = [w](std::int64_t v) { return std::clamp(v, std::int64_t{0}, w - 1); };
    auto clamp_y = [h](std::int64_t v) { return std::clamp(v, std::int64_t{0}, h - 1); };

#pragma omp parallel
    {
        HistCounters local{};
#pragma omp for schedule(static)
        for (std::int64_t t = 0; t < static_cast<std::int64_t>(n_tiles); ++t) {
            std::size_t tx = static_cast<std::size_t>(t) % g.n_tx;
            std::size_t ty = static_cast<std::size_t>(t) / g.n_tx;
            TileRect r = g.rect(tx, ty);
            const std::int64_t rx0 = static_cast<std::int64_t>(r.x0);
            const std::int64_t rx1 = static_cast<std::int64_t>(r.x1);
            const std::int64_t ry0 = static_cast<std::int64_t>(r.y0);
            const std::int64_t ry1 = static_cast<std::int64_t>(r.y1);

            // One median window histogram per tile, seeded at the top-left
            // output pixel and slid boustrophedon over the tile. Window
            // pixels come from the raw image, so tiles stay independent.
            Histogram256 win;
            for (std::int64_t dy = 0; dy < q; ++dy) {
                std::int64_t yy = clamp_y(ry0 - ay + dy);
                for (std::int64_t dx = 0; dx < p; ++dx) {
                    std::int64_t xx = clamp_x(rx0 - ax + dx);
                    win.add(img.at(static_cast<std::size_t>(xx),
                                   static_cast<std::size_t>(yy)));
                }
            }
            local.builds += 1;

            // Filtered-tile histogram, fed one value at a time as medians
            // are produced; never rebuilt from pixel storage.
            Histogram256 tile_hist;

            std::int64_t x = rx0;
            for (std::int64_t y = ry0; y < ry1; ++y) {
                const bool rightward = ((y - ry0) % 2) == 0;
                for (std::int64_t step = rx0; step < rx1; ++step) {
                    std::uint8_t med = hist_median(win);
                    out.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = med;
                    tile_hist.add(med);
                    local.inserts += 1;
                    const bool last_in_row = (step == rx1 - 1);
                    if (!last_in_row) {
                        if (rightward) {
                            for (std::int64_t dy = 0; dy < q; ++dy) {
                                std::int64_t yy = clamp_y(y - ay + dy);
                                win.remove(img.at(static_cast<std::size_t>(clamp_x(x - ax)),
                                                  static_cast<std::size_t>(yy)));
                                win.add(img.at(static_cast<std::size_t>(clamp_x(x + p - ax)),
                                               static_cast<std::size_t>(yy)));
                            }
                            ++x;
                        } else {
                            for (std::int64_t dy = 0; dy < q; ++dy) {
                                std::int64_t yy = clamp_y(y - ay + dy);
                                win.remove(img.at(static_cast<std::size_t>(clamp_x(x + p - 1 - ax)),
                                                  static_cast<std::size_t>(yy)));
                                win.add(img.at(static_cast<std::size_t>(clamp_x(x - 1 - ax)),
                                               static_cast<std::size_t>(yy)));
                            }
                            --x;
                        }
                        local.inserts += static_cast<std::uint64_t>(q);
                        local.removes += static_cast<std::uint64_t>(q);
                    }
                }
                // Drop down one row, keeping the current column.
                if (y + 1 < ry1) {
                    for (std::int64_t dx = 0; dx < p; ++dx) {
                        std::int64_t xx = clamp_x(x - ax + dx);
                        win.remove(img.at(static_cast<std::size_t>(xx),
                                          static_cast<std::size_t>(clamp_y(y - ay))));
                        win.add(img.at(static_cast<std::size_t>(xx),
                                       static_cast<std::size_t>(clamp_y(y + q - ay))));
                    }
                    local.inserts += static_cast<std::uint64_t>(p);
                    local.removes += static_cast<std::uint64_t>(p);
                }
            }

            auto lut = tile_lut(tile_hist, ccfg, r.pixels());
            if (ccfg.blend == TileBlend::bilinear) {
                luts[static_cast<std::size_t>(t)] = lut;
            } else {
                for (std::size_t yy = r.y0; yy < r.y1; ++yy)
                    for (std::size_t xx = r.x0; xx < r.x1; ++xx)
                        out.at(xx, yy) = lut[out.at(xx, yy)];
            }
        }
#pragma omp critical
        {
            total.builds += local.builds;
            total.inserts += local.inserts;
            total.removes += local.removes;
        }
    }

    if (ccfg.blend == TileBlend::bilinear) {
        // out currently holds the filtered values; blend in place.
        GrayImage filtered = out;
        apply_bilinear(filtered, out, g, luts);
    }

    if (counters) {
        counters->builds += total.builds;
        counters->inserts += total.inserts;
        counters->removes += total.removes;
    }
    return out;
}

}  // namespace stripsar
