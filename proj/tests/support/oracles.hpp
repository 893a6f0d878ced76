// Independent brute-force references the library is tested against.
// Everything here favors obviousness over speed: dense loops, no shared code
// with the implementations under test beyond the public data types.
#ifndef VEINPROC_TESTS_ORACLES_HPP
#define VEINPROC_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <random>
#include <vector>

#include "veinproc/image.hpp"
#include "veinproc/retinex.hpp"
#include "veinproc/segmentation.hpp"

namespace oracles {

using veinproc::BinaryImage;
using veinproc::GaussianKernel;
using veinproc::GrayImage;

inline GrayImage random_image(std::mt19937& rng, int w, int h) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    GrayImage img(w, h);
    for (double& v : img.data) v = dist(rng);
    return img;
}

inline BinaryImage random_mask(std::mt19937& rng, int w, int h, double p) {
    std::bernoulli_distribution dist(p);
    BinaryImage bin(w, h);
    for (auto& v : bin.mask) v = dist(rng) ? 1 : 0;
    return bin;
}

// Dense 2-D convolution with the outer-product kernel and replicated edges.
inline GrayImage dense_convolve(const GrayImage& img, const GaussianKernel& k) {
    const int r = k.radius;
    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double acc = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    const double w2 = k.weights[static_cast<std::size_t>(dy + r)] *
                                      k.weights[static_cast<std::size_t>(dx + r)];
                    const int sx = std::clamp(x + dx, 0, img.width - 1);
                    const int sy = std::clamp(y + dy, 0, img.height - 1);
                    acc += w2 * img.at(sx, sy);
                }
            }
            out.at(x, y) = acc;
        }
    }
    return out;
}

inline double naive_contrast(const GrayImage& img) {
    const double n = static_cast<double>(img.width) * img.height;
    double mean = 0.0;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) mean += img.at(x, y) * 255.0;
    mean /= n;
    double var = 0.0;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const double d = img.at(x, y) * 255.0 - mean;
            var += d * d;
        }
    return std::sqrt(var / n);
}

inline double naive_entropy(const GrayImage& img) {
    std::vector<double> counts(256, 0.0);
    for (double v : img.data) {
        int level = static_cast<int>(std::floor(v * 255.0 + 0.5));
        level = std::clamp(level, 0, 255);
        counts[static_cast<std::size_t>(level)] += 1.0;
    }
    const double total = static_cast<double>(img.data.size());
    double e = 0.0;
    for (double c : counts)
        if (c > 0.0) e -= (c / total) * std::log(c / total);
    return e;
}

inline double naive_definition(const GrayImage& img) {
    double sum = 0.0;
    for (int m = 1; m < img.height; ++m) {
        for (int n = 1; n < img.width; ++n) {
            const double dx = (img.at(n, m) - img.at(n - 1, m)) * 255.0;
            const double dy = (img.at(n, m) - img.at(n, m - 1)) * 255.0;
            sum += std::sqrt(dx * dx + dy * dy);
        }
    }
    return sum / (static_cast<double>(img.height - 1) * static_cast<double>(img.width - 1));
}

// Median by literally gathering and sorting every neighborhood.
inline GrayImage naive_median(const GrayImage& img, int window) {
    const int r = window / 2;
    GrayImage out(img.width, img.height);
    std::vector<double> vals;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            vals.clear();
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    vals.push_back(img.at(std::clamp(x + dx, 0, img.width - 1),
                                          std::clamp(y + dy, 0, img.height - 1)));
            std::sort(vals.begin(), vals.end());
            out.at(x, y) = vals[vals.size() / 2];
        }
    }
    return out;
}

// BFS flood fill; labels numbered 1.. in raster order of discovery.
struct FloodFillResult {
    std::vector<int> labels;
    std::vector<std::int64_t> sizes;  // sizes[0] == 0
};

inline FloodFillResult flood_fill(const BinaryImage& bin, int connectivity) {
    FloodFillResult res;
    res.labels.assign(bin.mask.size(), 0);
    res.sizes.assign(1, 0);
    std::deque<std::pair<int, int>> queue;
    int next = 0;
    for (int sy = 0; sy < bin.height; ++sy) {
        for (int sx = 0; sx < bin.width; ++sx) {
            const std::size_t start = static_cast<std::size_t>(sy) * bin.width + sx;
            if (!bin.mask[start] || res.labels[start] != 0) continue;
            const int label = ++next;
            res.sizes.push_back(0);
            res.labels[start] = label;
            queue.clear();
            queue.emplace_back(sx, sy);
            while (!queue.empty()) {
                const auto [x, y] = queue.front();
                queue.pop_front();
                ++res.sizes[static_cast<std::size_t>(label)];
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        if (connectivity == 4 && dx != 0 && dy != 0) continue;
                        const int nx = x + dx;
                        const int ny = y + dy;
                        if (nx < 0 || ny < 0 || nx >= bin.width || ny >= bin.height) continue;
                        const std::size_t idx = static_cast<std::size_t>(ny) * bin.width + nx;
                        if (!bin.mask[idx] || res.labels[idx] != 0) continue;
                        res.labels[idx] = label;
                        queue.emplace_back(nx, ny);
                    }
                }
            }
        }
    }
    return res;
}

// Otsu by scoring every candidate level with its own full histogram pass.
inline int exhaustive_otsu(const GrayImage& img) {
    std::vector<std::int64_t> hist(256, 0);
    for (double v : img.data) {
        int level = static_cast<int>(std::floor(v * 255.0 + 0.5));
        level = std::clamp(level, 0, 255);
        ++hist[static_cast<std::size_t>(level)];
    }
    int occupied = 0;
    for (auto c : hist) occupied += c > 0 ? 1 : 0;
    if (occupied < 2) return -1;

    const double total = static_cast<double>(img.data.size());
    double best = -1.0;
    int best_k = 0;
    for (int k = 0; k < 256; ++k) {
        double n0 = 0.0, n1 = 0.0, s0 = 0.0, s1 = 0.0;
        for (int b = 0; b < 256; ++b) {
            const double c = static_cast<double>(hist[static_cast<std::size_t>(b)]);
            if (b <= k) {
                n0 += c;
                s0 += c * b;
            } else {
                n1 += c;
                s1 += c * b;
            }
        }
        if (n0 == 0.0 || n1 == 0.0) continue;
        const double mu0 = s0 / n0;
        const double mu1 = s1 / n1;
        const double score = (n0 / total) * (n1 / total) * (mu0 - mu1) * (mu0 - mu1);
        if (score > best) {
            best = score;
            best_k = k;
        }
    }
    return best_k;
}

// Direct CDF-based equalization, per-pixel, no lookup table.
inline GrayImage naive_equalize(const GrayImage& img) {
    std::vector<std::int64_t> hist(256, 0);
    for (double v : img.data) {
        int level = static_cast<int>(std::floor(v * 255.0 + 0.5));
        level = std::clamp(level, 0, 255);
        ++hist[static_cast<std::size_t>(level)];
    }
    std::int64_t cdf_min = 0;
    for (auto c : hist)
        if (c > 0) {
            cdf_min = c;
            break;
        }
    const std::int64_t total = static_cast<std::int64_t>(img.data.size());
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        int level = static_cast<int>(std::floor(img.data[i] * 255.0 + 0.5));
        level = std::clamp(level, 0, 255);
        std::int64_t cdf = 0;
        for (int b = 0; b <= level; ++b) cdf += hist[static_cast<std::size_t>(b)];
        out.data[i] =
            total > cdf_min ? static_cast<double>(cdf - cdf_min) / static_cast<double>(total - cdf_min)
                            : 0.0;
    }
    return out;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov += (a[i] - ma) * (b[i] - mb);
        va += (a[i] - ma) * (a[i] - ma);
        vb += (b[i] - mb) * (b[i] - mb);
    }
    return cov / std::sqrt(va * vb);
}

}  // namespace oracles

#endif
