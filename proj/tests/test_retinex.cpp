#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"
#include "veinproc/retinex.hpp"

using namespace veinproc;

TEST_CASE("kernel: radius, length, unit sum, symmetry, positivity") {
    const GaussianKernel k = build_kernel(25.0);
    CHECK(k.radius == 75);
    CHECK(k.weights.size() == 151);
    double sum = 0.0;
    for (double w : k.weights) {
        CHECK(w > 0.0);
        sum += w;
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
    for (int i = 0; i <= k.radius; ++i)
        CHECK(k.weights[static_cast<std::size_t>(k.radius - i)] ==
              k.weights[static_cast<std::size_t>(k.radius + i)]);

    const GaussianKernel tight = build_kernel(0.5);
    CHECK(tight.radius == 2);
    for (std::size_t i = 0; i < tight.weights.size(); ++i)
        if (i != static_cast<std::size_t>(tight.radius))
            CHECK(tight.weights[static_cast<std::size_t>(tight.radius)] > tight.weights[i]);

    CHECK_THROWS_AS(build_kernel(0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_kernel(-1.0), std::invalid_argument);
}

TEST_CASE("convolution preserves constant images bitwise") {
    for (double sigma : {0.8, 3.0, 25.0}) {
        const GrayImage img(37, 23, 0.4375);
        const GrayImage out = convolve_separable(img, build_kernel(sigma));
        CHECK(out.data == img.data);
    }
}

TEST_CASE("single impulse spreads into the separable 2-D bump") {
    GrayImage img(41, 41, 0.0);
    img.at(20, 20) = 1.0;
    const GaussianKernel k = build_kernel(3.0);
    const GrayImage out = convolve_separable(img, k);
    const GrayImage ref = oracles::dense_convolve(img, k);
    for (std::size_t i = 0; i < out.data.size(); ++i)
        CHECK(std::abs(out.data[i] - ref.data[i]) < 1e-9);
}

TEST_CASE("separable equals dense convolution on random images") {
    std::mt19937 rng(21u);
    std::uniform_int_distribution<int> size(2, 48);
    for (double sigma : {0.8, 3.0, 25.0}) {
        for (int trial = 0; trial < 6; ++trial) {
            const GrayImage img = oracles::random_image(rng, size(rng), size(rng));
            const GaussianKernel k = build_kernel(sigma);
            const GrayImage out = convolve_separable(img, k);
            const GrayImage ref = oracles::dense_convolve(img, k);
            double max_err = 0.0;
            for (std::size_t i = 0; i < out.data.size(); ++i)
                max_err = std::max(max_err, std::abs(out.data[i] - ref.data[i]));
            CHECK(max_err < 1e-9);
        }
    }
}

TEST_CASE("interior of a linear ramp is unchanged") {
    GrayImage img(60, 40);
    for (int y = 0; y < 40; ++y)
        for (int x = 0; x < 60; ++x) img.at(x, y) = x / 100.0;
    const GaussianKernel k = build_kernel(3.0);  // radius 9
    const GrayImage out = convolve_separable(img, k);
    for (int y = 9; y < 40 - 9; ++y)
        for (int x = 9; x < 60 - 9; ++x)
            CHECK(std::abs(out.at(x, y) - img.at(x, y)) < 1e-9);
}

TEST_CASE("convolution output stays inside the input range") {
    std::mt19937 rng(22u);
    for (int trial = 0; trial < 10; ++trial) {
        const GrayImage img = oracles::random_image(rng, 31, 17);
        const double lo = *std::min_element(img.data.begin(), img.data.end());
        const double hi = *std::max_element(img.data.begin(), img.data.end());
        const GrayImage out = convolve_separable(img, build_kernel(2.0));
        for (double v : out.data) {
            CHECK(v >= lo - 1e-12);
            CHECK(v <= hi + 1e-12);
        }
    }
}

TEST_CASE("retinex of a constant image is exactly zero") {
    const GrayImage img(50, 30, 0.3125);
    const ReflectanceMap r = single_scale_retinex(img, build_kernel(25.0));
    for (double v : r.values.data) CHECK(v == 0.0);
}

TEST_CASE("retinex rejects non-positive epsilon") {
    const GrayImage img(4, 4, 0.5);
    const GaussianKernel k = build_kernel(1.0);
    CHECK_THROWS_AS(single_scale_retinex(img, k, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(single_scale_retinex(img, k, -1e-6), std::invalid_argument);
}

TEST_CASE("retinex output is finite for images containing zeros") {
    GrayImage img(16, 16, 0.0);
    img.at(8, 8) = 1.0;
    const ReflectanceMap r = single_scale_retinex(img, build_kernel(3.0));
    for (double v : r.values.data) CHECK(std::isfinite(v));
}

TEST_CASE("scaling invariance tightens as epsilon shrinks") {
    std::mt19937 rng(23u);
    GrayImage img = oracles::random_image(rng, 40, 40);
    for (double& v : img.data) v = 0.05 + 0.9 * v;  // keep values away from 0
    GrayImage doubled = img;
    for (double& v : doubled.data) v *= 2.0;

    const GaussianKernel k = build_kernel(5.0);
    double prev = 1e9;
    for (double eps : {1e-4, 1e-6, 1e-8}) {
        const ReflectanceMap a = single_scale_retinex(img, k, eps);
        const ReflectanceMap b = single_scale_retinex(doubled, k, eps);
        double max_diff = 0.0;
        for (std::size_t i = 0; i < a.values.data.size(); ++i)
            max_diff = std::max(max_diff, std::abs(a.values.data[i] - b.values.data[i]));
        CHECK(max_diff < prev);
        prev = max_diff;
    }
    CHECK(prev < 1e-6);  // at eps = 1e-8 the scale dependence is negligible
}

TEST_CASE("stripes under smooth illumination: reflectance is recovered") {
    const auto scene = synthetic::make_stripe_scene(128, 128, 4, 40.0, 20);
    const ReflectanceMap r = single_scale_retinex(scene.image, build_kernel(15.0));

    std::vector<double> ssr, log_r0, observed, r0;
    for (std::size_t idx : scene.interior) {
        ssr.push_back(r.values.data[idx]);
        log_r0.push_back(std::log(scene.reflect.data[idx]));
        observed.push_back(scene.image.data[idx]);
        r0.push_back(scene.reflect.data[idx]);
    }
    const double corr_ssr = oracles::pearson(ssr, log_r0);
    const double corr_raw = oracles::pearson(observed, r0);
    CHECK(corr_ssr >= 0.95);
    CHECK(corr_raw < corr_ssr);
}

TEST_CASE("illumination leakage into reflectance grows with sigma") {
    // On a pure smooth-illumination image the ideal reflectance is constant:
    // a small surround tracks the illumination and cancels it, while a wide
    // surround flattens the estimate and lets the illumination through.
    GrayImage illum(160, 160);
    for (int y = 0; y < 160; ++y)
        for (int x = 0; x < 160; ++x)
            illum.at(x, y) =
                0.25 + 0.75 * std::exp(-((x - 60.0) * (x - 60.0) + (y - 70.0) * (y - 70.0)) /
                                       (2.0 * 45.0 * 45.0));
    double prev = -1.0;
    for (double sigma : {5.0, 25.0, 50.0}) {
        const ReflectanceMap r = single_scale_retinex(illum, build_kernel(sigma));
        double mean = 0.0;
        for (double v : r.values.data) mean += v;
        mean /= static_cast<double>(r.values.data.size());
        double var = 0.0;
        for (double v : r.values.data) var += (v - mean) * (v - mean);
        var /= static_cast<double>(r.values.data.size());
        CHECK(var > prev);
        prev = var;
    }
}

TEST_CASE("rescale_to_unit") {
    ReflectanceMap flat{GrayImage(5, 5, 0.0)};
    for (double v : rescale_to_unit(flat).data) CHECK(v == 0.0);

    ReflectanceMap three{GrayImage(3, 1)};
    three.values.data = {-1.0, 0.0, 1.0};
    const GrayImage out = rescale_to_unit(three);
    CHECK(out.data[0] == 0.0);
    CHECK(out.data[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(out.data[2] == 1.0);

    std::mt19937 rng(24u);
    ReflectanceMap r{oracles::random_image(rng, 12, 12)};
    for (double& v : r.values.data) v = v * 7.0 - 3.0;
    const GrayImage unit = rescale_to_unit(r);
    CHECK(*std::min_element(unit.data.begin(), unit.data.end()) == 0.0);
    CHECK(*std::max_element(unit.data.begin(), unit.data.end()) == 1.0);
}
