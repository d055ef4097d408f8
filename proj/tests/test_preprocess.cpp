#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include <statecraft/statecraft.hpp>

#include "oracles.hpp"

namespace sc = statecraft;
using oracle::fill_random;

namespace {

sc::Tensor<float> random_image(sc::Rng& rng, int h, int w) {
    sc::Tensor<float> img({h, w, 3});
    for (auto& v : img.data) v = static_cast<float>(rng.uniform(0.0, 255.0));
    return img;
}

// covariance of row-vector samples, double precision
std::vector<double> covariance(const std::vector<sc::Tensor<float>>& xs) {
    const std::size_t d = xs[0].data.size();
    std::vector<double> mean(d, 0.0), cov(d * d, 0.0);
    for (const auto& x : xs)
        for (std::size_t i = 0; i < d; ++i) mean[i] += x.data[i];
    for (auto& m : mean) m /= static_cast<double>(xs.size());
    for (const auto& x : xs)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                cov[i * d + j] += (x.data[i] - mean[i]) * (x.data[j] - mean[j]);
    for (auto& c : cov) c /= static_cast<double>(xs.size());
    return cov;
}

}  // namespace

TEST(Preprocess, ResizeIsIdentityAtSameSize) {
    sc::Rng rng(401);
    const auto img = random_image(rng, 9, 7);
    const auto out = sc::resize_bilinear(img, 9, 7);
    EXPECT_EQ(out.data, img.data);
}

TEST(Preprocess, ResizeInterpolatesLinearRamp) {
    // a linear ramp stays linear under bilinear resampling
    sc::Tensor<float> img({1, 5, 3});
    for (int x = 0; x < 5; ++x)
        for (int c = 0; c < 3; ++c) img.at({0, x, c}) = static_cast<float>(10 * x);
    const auto out = sc::resize_bilinear(img, 1, 9);
    // half-pixel mapping: dst x maps to (x + 0.5) * 5/9 - 0.5 in source
    for (int x = 0; x < 9; ++x) {
        const double src = (x + 0.5) * (5.0 / 9.0) - 0.5;
        const double want = 10.0 * std::min(4.0, std::max(0.0, src));
        EXPECT_NEAR(out.at({0, x, 0}), want, 1e-4) << x;
    }
}

TEST(Preprocess, ResizeDownThenShapeChecks) {
    sc::Rng rng(402);
    const auto img = random_image(rng, 16, 16);
    const auto out = sc::resize_bilinear(img, 4, 4);
    ASSERT_EQ(out.shape, (std::vector<int>{4, 4, 3}));
    float lo = 1e9f, hi = -1e9f;
    for (float v : out.data) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    EXPECT_GE(lo, 0.0f);
    EXPECT_LE(hi, 255.0f);
}

TEST(Preprocess, PipelineCentersAndNormalizesPerSample) {
    sc::Rng rng(403);
    const auto img = random_image(rng, 12, 10);
    const auto out = sc::preprocess(img, 8, 8);
    ASSERT_EQ(out.shape, (std::vector<int>{8, 8, 3}));
    double mean = 0;
    for (float v : out.data) mean += v;
    mean /= static_cast<double>(out.data.size());
    double var = 0;
    for (float v : out.data) var += (v - mean) * (v - mean);
    var /= static_cast<double>(out.data.size());
    EXPECT_NEAR(mean, 0.0, 1e-5);
    EXPECT_NEAR(std::sqrt(var), 1.0, 1e-4);
}

TEST(Preprocess, ConstantImageHitsStdFloorInsteadOfDividingByZero) {
    sc::Tensor<float> img({4, 4, 3});
    img.fill(128.0f);
    const auto out = sc::preprocess(img, 4, 4);
    // rounding residue of the mean, amplified by the 1e-6 std floor, keeps
    // this near zero rather than exactly zero; it must stay finite and tiny
    for (float v : out.data) {
        ASSERT_TRUE(std::isfinite(v));
        EXPECT_NEAR(v, 0.0f, 1e-6);
    }
}

TEST(Preprocess, ZcaWhitensCovarianceToIdentity) {
    sc::Rng rng(404);
    const int d = 27;  // 3x3x3 images
    // correlated samples: random mixing of independent factors
    std::vector<double> mix(static_cast<std::size_t>(d * d));
    for (auto& v : mix) v = rng.uniform(-1.0, 1.0);
    std::vector<sc::Tensor<float>> xs;
    for (int s = 0; s < 500; ++s) {
        sc::Tensor<float> x({3, 3, 3});
        std::vector<double> z(static_cast<std::size_t>(d));
        for (auto& v : z) v = rng.normal(0.0, 1.0);
        for (int i = 0; i < d; ++i) {
            double acc = 0;
            for (int j = 0; j < d; ++j) acc += mix[static_cast<std::size_t>(i * d + j)] * z[static_cast<std::size_t>(j)];
            x.at(i) = static_cast<float>(acc);
        }
        xs.push_back(std::move(x));
    }

    const sc::ZcaModel zca = sc::fit_zca(xs);
    EXPECT_EQ(zca.dim(), d);

    // symmetric within 1e-6
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            EXPECT_NEAR(zca.whitening.at2(i, j), zca.whitening.at2(j, i), 1e-6);

    std::vector<sc::Tensor<float>> whitened;
    for (const auto& x : xs) whitened.push_back(sc::zca_apply(zca, x));
    const auto cov = covariance(whitened);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double want = i == j ? 1.0 : 0.0;
            EXPECT_NEAR(cov[static_cast<std::size_t>(i * d + j)], want, 0.05) << i << "," << j;
        }
}

TEST(Preprocess, ZcaOnWhiteDataIsNearIdentity) {
    sc::Rng rng(405);
    const int d = 12;
    std::vector<sc::Tensor<float>> xs;
    for (int s = 0; s < 4000; ++s) {
        sc::Tensor<float> x({d});
        for (auto& v : x.data) v = static_cast<float>(rng.normal(0.0, 1.0));
        xs.push_back(std::move(x));
    }
    const sc::ZcaModel zca = sc::fit_zca(xs);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double want = i == j ? 1.0 : 0.0;
            EXPECT_NEAR(zca.whitening.at2(i, j), want, 0.05) << i << "," << j;
        }
}

TEST(Preprocess, ZcaRoundTripsThroughArchive) {
    sc::Rng rng(406);
    std::vector<sc::Tensor<float>> xs;
    for (int s = 0; s < 40; ++s) {
        sc::Tensor<float> x({2, 2, 3});
        fill_random(x, rng, -2.0, 2.0);
        xs.push_back(std::move(x));
    }
    const sc::ZcaModel zca = sc::fit_zca(xs);
    const std::string path = (std::filesystem::temp_directory_path() / "zca_roundtrip.bin").string();
    sc::save_zca(zca, path);
    const sc::ZcaModel back = sc::load_zca(path);
    EXPECT_EQ(back.mean.data, zca.mean.data);
    EXPECT_EQ(back.whitening.data, zca.whitening.data);
    EXPECT_EQ(back.epsilon, zca.epsilon);
    std::filesystem::remove(path);
}

TEST(Preprocess, ZcaNeedsAtLeastTwoSamples) {
    std::vector<sc::Tensor<float>> one;
    one.emplace_back(std::vector<int>{4});
    EXPECT_THROW(sc::fit_zca(one), sc::DataError);
}
