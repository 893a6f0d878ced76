#ifndef VEINPROC_SEGMENTATION_HPP
#define VEINPROC_SEGMENTATION_HPP

#include <cstdint>
#include <vector>

#include "veinproc/image.hpp"

namespace veinproc {

/// 2-D boolean raster (0 = background, 1 = foreground), row-major.
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask;

    BinaryImage() = default;
    BinaryImage(int w, int h, bool fill = false)
        : width(w), height(h),
          mask(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill ? 1 : 0) {
        if (w < 1 || h < 1)
            throw std::invalid_argument("BinaryImage: dimensions must be >= 1");
    }

    bool at(int x, int y) const { return mask[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v) { mask[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }

    std::int64_t foreground_count() const {
        std::int64_t n = 0;
        for (auto v : mask) n += v;
        return n;
    }
    bool operator==(const BinaryImage& other) const = default;
};

/// Connected components of a mask. Labels are contiguous 1..K, assigned in
/// raster order of each component's first pixel; 0 is background.
/// component_sizes[l] is the pixel count of label l (index 0 unused).
struct ComponentLabeling {
    int width = 0;
    int height = 0;
    std::vector<int> labels;
    std::vector<std::int64_t> component_sizes;  // size K+1, [0] == 0

    int count() const { return static_cast<int>(component_sizes.size()) - 1; }
};

/// Threshold selection: a fixed cut in [0,1] or Otsu's histogram criterion.
struct ThresholdMethod {
    enum class Kind { fixed, otsu };
    Kind kind = Kind::otsu;
    double value = 0.5;

    static ThresholdMethod fixed(double t) { return {Kind::fixed, t}; }
    static ThresholdMethod otsu() { return {Kind::otsu, 0.0}; }
};

/// Binarization: foreground = pixels with value < t (vein lines are dark in
/// the enhanced image). Otsu picks the 256-level split maximizing
/// between-class variance, lowest level winning ties; a single-level image
/// yields an all-background mask.
BinaryImage threshold(const GrayImage& img, const ThresholdMethod& method);

/// Otsu's level over a 256-bin histogram of `img`: maximizes between-class
/// variance of {levels <= k} vs {levels > k}. Returns -1 for single-level
/// histograms. Exposed for direct testing against exhaustive search.
int otsu_level(const GrayImage& img);

/// Union-find connected component labeling under 4- or 8-connectivity.
ComponentLabeling label_components(const BinaryImage& bin, int connectivity = 8);

/// Removes components smaller than min_area pixels; surviving components are
/// preserved pixel-exact.
BinaryImage remove_small_components(const BinaryImage& bin, std::int64_t min_area,
                                    int connectivity = 8);

/// Logical complement.
BinaryImage invert(const BinaryImage& bin);

/// Iterative two-subpass thinning to a 1-pixel-wide skeleton, run to a
/// fixpoint. Anti-extensive and idempotent; preserves 8-connectivity.
BinaryImage thin(const BinaryImage& bin);

/// Mask as a {0,1}-valued grayscale image (serializes to {0,255} samples).
GrayImage mask_to_gray(const BinaryImage& bin);

/// Foreground = pixels with value >= 0.5 (the complement of the save rule).
BinaryImage gray_to_mask(const GrayImage& img);

}  // namespace veinproc

#endif
