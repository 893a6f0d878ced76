#include "veinproc/segmentation.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "veinproc/enhance.hpp"

namespace veinproc {

int otsu_level(const GrayImage& img) {
    const Histogram hist = histogram_of(img);
    int occupied = 0;
    for (auto b : hist.bins) occupied += b > 0 ? 1 : 0;
    if (occupied < 2) return -1;

    std::int64_t weighted_total = 0;
    for (int b = 0; b < 256; ++b) weighted_total += static_cast<std::int64_t>(b) * hist.bins[static_cast<std::size_t>(b)];

    const double total = static_cast<double>(hist.total);
    double best_var = -1.0;
    int best_level = 0;
    std::int64_t n0 = 0;
    std::int64_t sum0 = 0;
    for (int k = 0; k < 256; ++k) {
        n0 += hist.bins[static_cast<std::size_t>(k)];
        sum0 += static_cast<std::int64_t>(k) * hist.bins[static_cast<std::size_t>(k)];
        const std::int64_t n1 = hist.total - n0;
        if (n0 == 0 || n1 == 0) continue;
        const double mu0 = static_cast<double>(sum0) / static_cast<double>(n0);
        const double mu1 = static_cast<double>(weighted_total - sum0) / static_cast<double>(n1);
        const double between = (static_cast<double>(n0) / total) * (static_cast<double>(n1) / total) *
                               (mu0 - mu1) * (mu0 - mu1);
        if (between > best_var) {  // strict: lowest level wins ties
            best_var = between;
            best_level = k;
        }
    }
    return best_level;
}

BinaryImage threshold(const GrayImage& img, const ThresholdMethod& method) {
    double t = 0.0;
    if (method.kind == ThresholdMethod::Kind::fixed) {
        if (!(method.value >= 0.0 && method.value <= 1.0))
            throw std::invalid_argument("threshold: fixed t must lie in [0,1]");
        t = method.value;
    } else {
        const int level = otsu_level(img);
        if (level < 0) return BinaryImage(img.width, img.height, false);
        // v < (k + 0.5)/255 selects exactly the quantized levels <= k
        t = (level + 0.5) / 255.0;
    }

    BinaryImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i) out.mask[i] = img.data[i] < t ? 1 : 0;
    return out;
}

namespace {

struct UnionFind {
    std::vector<int> parent;

    int make() {
        parent.push_back(static_cast<int>(parent.size()));
        return static_cast<int>(parent.size()) - 1;
    }
    int find(int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

}  // namespace

ComponentLabeling label_components(const BinaryImage& bin, int connectivity) {
    if (connectivity != 4 && connectivity != 8)
        throw std::invalid_argument("label_components: connectivity must be 4 or 8");

    const int w = bin.width;
    const int h = bin.height;
    ComponentLabeling out;
    out.width = w;
    out.height = h;
    out.labels.assign(static_cast<std::size_t>(w) * h, 0);

    UnionFind uf;
    uf.make();  // slot 0 = background
    std::vector<int> provisional(static_cast<std::size_t>(w) * h, 0);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!bin.at(x, y)) continue;
            const std::size_t idx = static_cast<std::size_t>(y) * w + x;

            int neighbor = 0;
            const auto consider = [&](int nx, int ny) {
                if (nx < 0 || ny < 0 || nx >= w || ny >= h) return;
                const int lab = provisional[static_cast<std::size_t>(ny) * w + nx];
                if (lab == 0) return;
                if (neighbor == 0)
                    neighbor = lab;
                else
                    uf.unite(neighbor, lab);
            };
            consider(x - 1, y);
            consider(x, y - 1);
            if (connectivity == 8) {
                consider(x - 1, y - 1);
                consider(x + 1, y - 1);
            }
            provisional[idx] = neighbor != 0 ? neighbor : uf.make();
        }
    }

    // relabel roots as 1..K in raster order of each component's first pixel
    std::vector<int> root_to_label(uf.parent.size(), 0);
    int next_label = 0;
    for (std::size_t i = 0; i < provisional.size(); ++i) {
        if (provisional[i] == 0) continue;
        const int root = uf.find(provisional[i]);
        if (root_to_label[static_cast<std::size_t>(root)] == 0)
            root_to_label[static_cast<std::size_t>(root)] = ++next_label;
        out.labels[i] = root_to_label[static_cast<std::size_t>(root)];
    }
    out.component_sizes.assign(static_cast<std::size_t>(next_label) + 1, 0);
    for (int lab : out.labels)
        if (lab > 0) ++out.component_sizes[static_cast<std::size_t>(lab)];
    return out;
}

BinaryImage remove_small_components(const BinaryImage& bin, std::int64_t min_area,
                                    int connectivity) {
    if (min_area < 0)
        throw std::invalid_argument("remove_small_components: min_area must be non-negative");
    if (min_area <= 1) return bin;

    const ComponentLabeling labeling = label_components(bin, connectivity);
    BinaryImage out(bin.width, bin.height);
    for (std::size_t i = 0; i < out.mask.size(); ++i) {
        const int lab = labeling.labels[i];
        out.mask[i] = (lab > 0 && labeling.component_sizes[static_cast<std::size_t>(lab)] >= min_area) ? 1 : 0;
    }
    return out;
}

BinaryImage invert(const BinaryImage& bin) {
    BinaryImage out(bin.width, bin.height);
    for (std::size_t i = 0; i < out.mask.size(); ++i) out.mask[i] = bin.mask[i] ? 0 : 1;
    return out;
}

namespace {

// One Zhang-Suen subpass; reads `grid`, collects deletions, applies them
// simultaneously. Returns the number of deleted pixels.
//
// Neighbor layout:   p9 p2 p3
//                    p8 p1 p4
//                    p7 p6 p5
int thin_subpass(std::vector<std::uint8_t>& grid, int w, int h, int pass,
                 std::vector<std::size_t>& deletions) {
    deletions.clear();
    const auto px = [&](int x, int y) -> int {
        if (x < 0 || y < 0 || x >= w || y >= h) return 0;
        return grid[static_cast<std::size_t>(y) * w + x];
    };

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!px(x, y)) continue;
            const int p2 = px(x, y - 1);
            const int p3 = px(x + 1, y - 1);
            const int p4 = px(x + 1, y);
            const int p5 = px(x + 1, y + 1);
            const int p6 = px(x, y + 1);
            const int p7 = px(x - 1, y + 1);
            const int p8 = px(x - 1, y);
            const int p9 = px(x - 1, y - 1);

            const int b = p2 + p3 + p4 + p5 + p6 + p7 + p8 + p9;
            if (b < 2 || b > 6) continue;
            const int a = (p2 == 0 && p3 == 1) + (p3 == 0 && p4 == 1) + (p4 == 0 && p5 == 1) +
                          (p5 == 0 && p6 == 1) + (p6 == 0 && p7 == 1) + (p7 == 0 && p8 == 1) +
                          (p8 == 0 && p9 == 1) + (p9 == 0 && p2 == 1);
            if (a != 1) continue;
            if (pass == 0) {
                if (p2 * p4 * p6 != 0 || p4 * p6 * p8 != 0) continue;
            } else {
                if (p2 * p4 * p8 != 0 || p2 * p6 * p8 != 0) continue;
            }
            deletions.push_back(static_cast<std::size_t>(y) * w + x);
        }
    }
    for (std::size_t idx : deletions) grid[idx] = 0;
    return static_cast<int>(deletions.size());
}

}  // namespace

BinaryImage thin(const BinaryImage& bin) {
    BinaryImage out = bin;
    std::vector<std::size_t> deletions;
    int changed;
    do {
        changed = thin_subpass(out.mask, out.width, out.height, 0, deletions);
        changed += thin_subpass(out.mask, out.width, out.height, 1, deletions);
    } while (changed > 0);
    return out;
}

GrayImage mask_to_gray(const BinaryImage& bin) {
    GrayImage out(bin.width, bin.height);
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = bin.mask[i] ? 1.0 : 0.0;
    return out;
}

BinaryImage gray_to_mask(const GrayImage& img) {
    BinaryImage out(img.width, img.height);
    for (std::size_t i = 0; i < out.mask.size(); ++i) out.mask[i] = img.data[i] >= 0.5 ? 1 : 0;
    return out;
}

}  // namespace veinproc
