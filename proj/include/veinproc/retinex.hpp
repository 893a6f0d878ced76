#ifndef VEINPROC_RETINEX_HPP
#define VEINPROC_RETINEX_HPP

#include <vector>

#include "veinproc/image.hpp"

namespace veinproc {

/// Normalized Gaussian surround, realized as a separable 1-D profile of
/// length 2*radius + 1 with radius = ceil(3*sigma). Weights are strictly
/// positive, symmetric about the center, and sum to 1.
struct GaussianKernel {
    double sigma = 0.0;
    int radius = 0;
    std::vector<double> weights;
};

/// Reflectance estimate in the log domain; values are unbounded but finite.
struct ReflectanceMap {
    GrayImage values;
};

/// Builds the surround kernel for a given scale. Throws on sigma <= 0.
GaussianKernel build_kernel(double sigma);

/// Separable Gaussian convolution: horizontal pass then vertical pass, edge
/// replication at the borders, output dimensions equal to the input's.
/// A constant image convolves to itself bitwise.
GrayImage convolve_separable(const GrayImage& img, const GaussianKernel& kernel);

/// Single scale Retinex: R = log(I + eps) - log(G*I + eps). The same epsilon
/// guards both logarithms, so a constant image yields an all-zero map.
ReflectanceMap single_scale_retinex(const GrayImage& img, const GaussianKernel& kernel,
                                    double epsilon = 1e-4);

/// Min-max rescale of a reflectance map into [0,1]; a constant map maps to zeros.
GrayImage rescale_to_unit(const ReflectanceMap& map);

}  // namespace veinproc

#endif
