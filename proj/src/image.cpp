#include "veinproc/image.hpp"

#include <algorithm>

namespace veinproc {

GrayImage normalize_minmax(const GrayImage& img) {
    if (img.data.empty())
        throw std::invalid_argument("normalize_minmax: empty image");
    const auto [lo_it, hi_it] = std::minmax_element(img.data.begin(), img.data.end());
    const double lo = *lo_it;
    const double hi = *hi_it;

    GrayImage out(img.width, img.height);
    if (hi > lo) {
        // divide rather than multiply by a reciprocal: (v-lo)/(hi-lo) lands the
        // extremes exactly on 0 and 1 and never leaves [0,1]
        const double range = hi - lo;
        for (std::size_t i = 0; i < img.data.size(); ++i)
            out.data[i] = (img.data[i] - lo) / range;
    }
    // constant image stays all zeros
    return out;
}

GrayImage crop(const GrayImage& img, const Roi& roi) {
    if (roi.width < 1 || roi.height < 1 || roi.x0 < 0 || roi.y0 < 0 ||
        roi.x0 + roi.width > img.width || roi.y0 + roi.height > img.height)
        throw std::invalid_argument("crop: ROI outside image bounds");

    GrayImage out(roi.width, roi.height);
    for (int y = 0; y < roi.height; ++y) {
        const double* src = &img.data[static_cast<std::size_t>(roi.y0 + y) * img.width + roi.x0];
        std::copy(src, src + roi.width, &out.data[static_cast<std::size_t>(y) * roi.width]);
    }
    return out;
}

}  // namespace veinproc
