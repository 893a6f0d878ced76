#ifndef VEINPROC_ENHANCE_HPP
#define VEINPROC_ENHANCE_HPP

#include <array>
#include <cstdint>

#include "veinproc/image.hpp"

namespace veinproc {

/// 256-bin gray-level histogram; bin b counts pixels whose quantized level
/// (quantize255) equals b.
struct Histogram {
    std::array<std::int64_t, 256> bins{};
    std::int64_t total = 0;
};

Histogram histogram_of(const GrayImage& img);

/// Level mapping used by histogram equalization:
/// lut[v] = (cdf(v) - cdf_min) / (total - cdf_min), where cdf_min is the CDF
/// at the first occupied level, so the darkest occupied level maps to 0.
/// A single-level histogram maps every level to 0.
std::array<double, 256> equalization_lut(const Histogram& hist);

/// Global histogram equalization over 256 quantized levels. Output in [0,1];
/// the level mapping is monotone non-decreasing.
GrayImage histogram_equalize(const GrayImage& img);

/// Median of the window x window neighborhood with edge replication.
/// The window must be odd and positive.
GrayImage median_filter(const GrayImage& img, int window);

/// Contrast limited adaptive histogram equalization: per-tile clipped
/// histograms with the same CDF mapping as histogram_equalize, blended by
/// bilinear interpolation between tile centers. The clip limit is relative
/// to the uniform bin height (limit = clip_limit * tile_area / 256).
GrayImage clahe(const GrayImage& img, int tiles_x, int tiles_y, double clip_limit);

/// Raw difference of Gaussians: blur(sigma_small * ratio) - blur(sigma_small),
/// i.e. surround minus center, so dark lines come out positive.
GrayImage difference_of_gaussians(const GrayImage& img, double sigma_small, double ratio);

/// DoG band-pass followed by min-max rescale and histogram equalization.
GrayImage dog_he(const GrayImage& img, double sigma_small, double ratio);

/// Gaussian blur followed by min-max rescale to [0,1].
GrayImage gaussian_lowpass(const GrayImage& img, double sigma);

}  // namespace veinproc

#endif
