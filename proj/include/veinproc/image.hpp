#ifndef VEINPROC_IMAGE_HPP
#define VEINPROC_IMAGE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace veinproc {

/// 2-D grayscale raster, row-major, real-valued intensities.
///
/// Pipeline images carry values in [0,1]; quantization to 256 levels happens
/// only at file output and inside histogram-based operations. Log-domain maps
/// (reflectance) may hold any finite value.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;  // data[y * width + x]

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0)
        : width(w), height(h),
          data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {
        if (w < 1 || h < 1)
            throw std::invalid_argument("GrayImage: dimensions must be >= 1");
    }

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    std::size_t pixel_count() const { return data.size(); }
    bool same_size(const GrayImage& other) const {
        return width == other.width && height == other.height;
    }
};

/// Rectangular region of interest; must lie fully inside the source image.
struct Roi {
    int x0 = 0;
    int y0 = 0;
    int width = 0;
    int height = 0;
};

/// File and format errors from image/cube loading and saving.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shared 256-level quantization rule: level = clamp(floor(v*255 + 0.5), 0, 255).
inline int quantize255(double v) {
    int q = static_cast<int>(std::floor(v * 255.0 + 0.5));
    return q < 0 ? 0 : (q > 255 ? 255 : q);
}

/// Gray value normalization (f - min) / (max - min) into [0,1].
/// A constant image maps to all zeros.
GrayImage normalize_minmax(const GrayImage& img);

/// Exact sub-raster copy. Throws std::invalid_argument if the ROI leaves the image.
GrayImage crop(const GrayImage& img, const Roi& roi);

}  // namespace veinproc

#endif
