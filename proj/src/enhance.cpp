#include "veinproc/enhance.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "veinproc/retinex.hpp"

namespace veinproc {

Histogram histogram_of(const GrayImage& img) {
    Histogram hist;
    for (double v : img.data) ++hist.bins[static_cast<std::size_t>(quantize255(v))];
    hist.total = static_cast<std::int64_t>(img.data.size());
    return hist;
}

std::array<double, 256> equalization_lut(const Histogram& hist) {
    std::array<double, 256> lut{};
    std::int64_t cdf_min = 0;
    for (int b = 0; b < 256; ++b)
        if (hist.bins[static_cast<std::size_t>(b)] > 0) {
            cdf_min = hist.bins[static_cast<std::size_t>(b)];
            break;
        }
    if (hist.total <= cdf_min) return lut;  // constant (or empty) image: all zeros

    const double denom = static_cast<double>(hist.total - cdf_min);
    std::int64_t cdf = 0;
    for (int b = 0; b < 256; ++b) {
        cdf += hist.bins[static_cast<std::size_t>(b)];
        lut[static_cast<std::size_t>(b)] = std::max(0.0, static_cast<double>(cdf - cdf_min) / denom);
    }
    return lut;
}

GrayImage histogram_equalize(const GrayImage& img) {
    const auto lut = equalization_lut(histogram_of(img));
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i)
        out.data[i] = lut[static_cast<std::size_t>(quantize255(img.data[i]))];
    return out;
}

GrayImage median_filter(const GrayImage& img, int window) {
    if (window < 1 || window % 2 == 0)
        throw std::invalid_argument("median_filter: window must be odd and positive");
    if (window == 1) return img;

    const int r = window / 2;
    GrayImage out(img.width, img.height);
    std::vector<double> patch(static_cast<std::size_t>(window) * window);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            std::size_t n = 0;
            for (int dy = -r; dy <= r; ++dy) {
                const int yy = std::clamp(y + dy, 0, img.height - 1);
                for (int dx = -r; dx <= r; ++dx) {
                    const int xx = std::clamp(x + dx, 0, img.width - 1);
                    patch[n++] = img.at(xx, yy);
                }
            }
            const std::size_t mid = n / 2;
            std::nth_element(patch.begin(), patch.begin() + static_cast<std::ptrdiff_t>(mid),
                             patch.begin() + static_cast<std::ptrdiff_t>(n));
            out.at(x, y) = patch[mid];
        }
    }
    return out;
}

namespace {

// Clip a tile histogram at `limit` and redistribute the excess uniformly,
// remainder spread one count at a time over stepped bins.
void clip_histogram(std::array<std::int64_t, 256>& bins, std::int64_t limit) {
    std::int64_t excess = 0;
    for (auto& b : bins)
        if (b > limit) {
            excess += b - limit;
            b = limit;
        }
    if (excess == 0) return;
    const std::int64_t batch = excess / 256;
    std::int64_t residual = excess % 256;
    for (auto& b : bins) b += batch;
    if (residual > 0) {
        const std::size_t step = std::max<std::size_t>(1, 256 / static_cast<std::size_t>(residual));
        for (std::size_t b = 0; b < 256 && residual > 0; b += step, --residual) ++bins[b];
    }
}

// Tile index pair and blend weight along one axis, from tile-center positions.
struct AxisBlend {
    int lo = 0;
    int hi = 0;
    double w = 0.0;  // weight of `hi`
};

std::vector<AxisBlend> axis_blend(int extent, const std::vector<int>& bounds) {
    const int tiles = static_cast<int>(bounds.size()) - 1;
    std::vector<double> centers(static_cast<std::size_t>(tiles));
    for (int t = 0; t < tiles; ++t)
        centers[static_cast<std::size_t>(t)] = (bounds[static_cast<std::size_t>(t)] +
                                                bounds[static_cast<std::size_t>(t) + 1] - 1) / 2.0;

    std::vector<AxisBlend> blend(static_cast<std::size_t>(extent));
    for (int p = 0; p < extent; ++p) {
        AxisBlend b;
        if (p <= centers.front()) {
            b.lo = b.hi = 0;
        } else if (p >= centers.back()) {
            b.lo = b.hi = tiles - 1;
        } else {
            int t = 0;
            while (p >= centers[static_cast<std::size_t>(t) + 1]) ++t;
            b.lo = t;
            b.hi = t + 1;
            b.w = (p - centers[static_cast<std::size_t>(t)]) /
                  (centers[static_cast<std::size_t>(t) + 1] - centers[static_cast<std::size_t>(t)]);
        }
        blend[static_cast<std::size_t>(p)] = b;
    }
    return blend;
}

}  // namespace

GrayImage clahe(const GrayImage& img, int tiles_x, int tiles_y, double clip_limit) {
    if (tiles_x < 1 || tiles_y < 1)
        throw std::invalid_argument("clahe: tile grid must be at least 1x1");
    if (!(clip_limit > 0.0))
        throw std::invalid_argument("clahe: clip limit must be positive");

    // tile t spans [bounds[t], bounds[t+1])
    std::vector<int> xb(static_cast<std::size_t>(tiles_x) + 1);
    std::vector<int> yb(static_cast<std::size_t>(tiles_y) + 1);
    for (int t = 0; t <= tiles_x; ++t)
        xb[static_cast<std::size_t>(t)] = static_cast<int>(static_cast<std::int64_t>(t) * img.width / tiles_x);
    for (int t = 0; t <= tiles_y; ++t)
        yb[static_cast<std::size_t>(t)] = static_cast<int>(static_cast<std::int64_t>(t) * img.height / tiles_y);
    if (img.width < tiles_x || img.height < tiles_y)
        throw std::invalid_argument("clahe: more tiles than pixels along an axis");

    std::vector<int> levels(img.pixel_count());
    for (std::size_t i = 0; i < img.data.size(); ++i) levels[i] = quantize255(img.data[i]);

    std::vector<std::array<double, 256>> luts(static_cast<std::size_t>(tiles_x) * tiles_y);
    for (int ty = 0; ty < tiles_y; ++ty) {
        for (int tx = 0; tx < tiles_x; ++tx) {
            Histogram hist;
            for (int y = yb[static_cast<std::size_t>(ty)]; y < yb[static_cast<std::size_t>(ty) + 1]; ++y)
                for (int x = xb[static_cast<std::size_t>(tx)]; x < xb[static_cast<std::size_t>(tx) + 1]; ++x)
                    ++hist.bins[static_cast<std::size_t>(levels[static_cast<std::size_t>(y) * img.width + x])];
            const std::int64_t area =
                static_cast<std::int64_t>(yb[static_cast<std::size_t>(ty) + 1] - yb[static_cast<std::size_t>(ty)]) *
                (xb[static_cast<std::size_t>(tx) + 1] - xb[static_cast<std::size_t>(tx)]);
            hist.total = area;
            // single-level tiles keep the degenerate all-zero mapping of plain
            // equalization; redistribution would refill the empty bins and turn
            // the mapping into a near-identity instead
            int occupied = 0;
            for (auto b : hist.bins) occupied += b > 0 ? 1 : 0;
            if (occupied >= 2) {
                const std::int64_t limit =
                    std::max<std::int64_t>(1, static_cast<std::int64_t>(clip_limit * static_cast<double>(area) / 256.0));
                clip_histogram(hist.bins, limit);
            }
            luts[static_cast<std::size_t>(ty) * tiles_x + tx] = equalization_lut(hist);
        }
    }

    const auto bx = axis_blend(img.width, xb);
    const auto by = axis_blend(img.height, yb);
    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        const AxisBlend& v = by[static_cast<std::size_t>(y)];
        const auto* row_lo = &luts[static_cast<std::size_t>(v.lo) * tiles_x];
        const auto* row_hi = &luts[static_cast<std::size_t>(v.hi) * tiles_x];
        for (int x = 0; x < img.width; ++x) {
            const AxisBlend& u = bx[static_cast<std::size_t>(x)];
            const std::size_t lv = static_cast<std::size_t>(levels[static_cast<std::size_t>(y) * img.width + x]);
            const double top = (1.0 - u.w) * row_lo[u.lo][lv] + u.w * row_lo[u.hi][lv];
            const double bot = (1.0 - u.w) * row_hi[u.lo][lv] + u.w * row_hi[u.hi][lv];
            out.at(x, y) = (1.0 - v.w) * top + v.w * bot;
        }
    }
    return out;
}

GrayImage difference_of_gaussians(const GrayImage& img, double sigma_small, double ratio) {
    if (!(sigma_small > 0.0))
        throw std::invalid_argument("difference_of_gaussians: sigma must be positive");
    if (!(ratio > 1.0))
        throw std::invalid_argument("difference_of_gaussians: ratio must exceed 1");

    const GrayImage wide = convolve_separable(img, build_kernel(sigma_small * ratio));
    const GrayImage narrow = convolve_separable(img, build_kernel(sigma_small));
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = wide.data[i] - narrow.data[i];
    return out;
}

GrayImage dog_he(const GrayImage& img, double sigma_small, double ratio) {
    return histogram_equalize(normalize_minmax(difference_of_gaussians(img, sigma_small, ratio)));
}

GrayImage gaussian_lowpass(const GrayImage& img, double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("gaussian_lowpass: sigma must be positive");
    return normalize_minmax(convolve_separable(img, build_kernel(sigma)));
}

}  // namespace veinproc
