#include "veinproc/retinex.hpp"

#include <algorithm>
#include <cmath>

namespace veinproc {

GaussianKernel build_kernel(double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("build_kernel: sigma must be positive");

    GaussianKernel k;
    k.sigma = sigma;
    k.radius = static_cast<int>(std::ceil(3.0 * sigma));
    k.weights.resize(2 * static_cast<std::size_t>(k.radius) + 1);

    // The analytic normalization constant cancels; the discrete profile is
    // renormalized to sum 1 so the separable 2-D kernel is unit-sum too.
    const double inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);
    double sum = 0.0;
    for (int i = -k.radius; i <= k.radius; ++i) {
        const double w = std::exp(-(static_cast<double>(i) * i) * inv_two_sigma_sq);
        k.weights[static_cast<std::size_t>(i + k.radius)] = w;
        sum += w;
    }
    for (double& w : k.weights) w /= sum;
    return k;
}

namespace {

// One replicate-border pass along a row or column, given a strided view.
// The input is shifted by its minimum before accumulation and shifted back
// after, which keeps constant runs bitwise unchanged (zero residuals).
void convolve_line(const double* src, double* dst, int n, std::ptrdiff_t stride,
                   const std::vector<double>& weights, int radius,
                   std::vector<double>& line) {
    double lo = src[0];
    for (int i = 1; i < n; ++i) lo = std::min(lo, src[static_cast<std::ptrdiff_t>(i) * stride]);
    for (int i = 0; i < n; ++i)
        line[static_cast<std::size_t>(i)] = src[static_cast<std::ptrdiff_t>(i) * stride] - lo;

    const int taps = 2 * radius + 1;
    const double* w = weights.data();
    const auto edge_pixel = [&](int i) {
        double acc = 0.0;
        for (int t = -radius; t <= radius; ++t) {
            const int j = std::clamp(i + t, 0, n - 1);
            acc += w[t + radius] * line[static_cast<std::size_t>(j)];
        }
        dst[static_cast<std::ptrdiff_t>(i) * stride] = lo + acc;
    };

    if (n <= 2 * radius) {
        for (int i = 0; i < n; ++i) edge_pixel(i);
        return;
    }
    for (int i = 0; i < radius; ++i) edge_pixel(i);
    for (int i = radius; i < n - radius; ++i) {
        const double* p = &line[static_cast<std::size_t>(i - radius)];
        double acc = 0.0;
        for (int t = 0; t < taps; ++t) acc += w[t] * p[t];
        dst[static_cast<std::ptrdiff_t>(i) * stride] = lo + acc;
    }
    for (int i = n - radius; i < n; ++i) edge_pixel(i);
}

}  // namespace

GrayImage convolve_separable(const GrayImage& img, const GaussianKernel& kernel) {
    const int w = img.width;
    const int h = img.height;
    GrayImage mid(w, h);
    GrayImage out(w, h);
    std::vector<double> line(static_cast<std::size_t>(std::max(w, h)));

    for (int y = 0; y < h; ++y)
        convolve_line(&img.data[static_cast<std::size_t>(y) * w],
                      &mid.data[static_cast<std::size_t>(y) * w], w, 1,
                      kernel.weights, kernel.radius, line);
    for (int x = 0; x < w; ++x)
        convolve_line(&mid.data[static_cast<std::size_t>(x)],
                      &out.data[static_cast<std::size_t>(x)], h, w,
                      kernel.weights, kernel.radius, line);
    return out;
}

ReflectanceMap single_scale_retinex(const GrayImage& img, const GaussianKernel& kernel,
                                    double epsilon) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("single_scale_retinex: epsilon must be positive");

    const GrayImage surround = convolve_separable(img, kernel);
    ReflectanceMap map;
    map.values = GrayImage(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i)
        map.values.data[i] = std::log(img.data[i] + epsilon) - std::log(surround.data[i] + epsilon);
    return map;
}

GrayImage rescale_to_unit(const ReflectanceMap& map) {
    return normalize_minmax(map.values);
}

}  // namespace veinproc
