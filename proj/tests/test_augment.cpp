#include <gtest/gtest.h>

#include <cmath>

#include <statecraft/statecraft.hpp>

namespace sc = statecraft;

namespace {

sc::Tensor<float> ramp_image(int h, int w) {
    sc::Tensor<float> img({h, w, 3});
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < 3; ++c) img.at({y, x, c}) = static_cast<float>(y * w + x + 31 * c);
    return img;
}

}  // namespace

TEST(Augment, SampledParametersStayInConfiguredRanges) {
    const sc::AugmentSpec spec;  // defaults: flips, shear 0.2, shift 0.2, zoom 0.2, rotation 30
    sc::Rng rng(501);
    bool saw_hflip = false, saw_vflip = false;
    for (int i = 0; i < 10000; ++i) {
        const sc::AugmentParams p = sc::sample_augment(spec, rng);
        saw_hflip |= p.flip_h;
        saw_vflip |= p.flip_v;
        EXPECT_GE(p.zoom, 0.8);
        EXPECT_LE(p.zoom, 1.2);
        EXPECT_GE(p.shear, -0.2);
        EXPECT_LE(p.shear, 0.2);
        EXPECT_GE(p.shift_x, -0.2);
        EXPECT_LE(p.shift_x, 0.2);
        EXPECT_GE(p.shift_y, -0.2);
        EXPECT_LE(p.shift_y, 0.2);
        EXPECT_GE(p.rot_rad, -30.0 * M_PI / 180.0);
        EXPECT_LE(p.rot_rad, 30.0 * M_PI / 180.0);
    }
    EXPECT_TRUE(saw_hflip);
    EXPECT_TRUE(saw_vflip);
}

TEST(Augment, AllZeroSpecIsTheIdentity) {
    const sc::AugmentSpec spec = sc::AugmentSpec::none();
    sc::Rng rng(502);
    const auto img = ramp_image(9, 11);
    const auto out = sc::augment(img, spec, rng);
    EXPECT_EQ(out.data, img.data);

    const sc::AugmentParams p = sc::sample_augment(spec, rng);
    EXPECT_FALSE(p.flip_h);
    EXPECT_FALSE(p.flip_v);
    EXPECT_EQ(p.zoom, 1.0);
    EXPECT_EQ(p.shear, 0.0);
    EXPECT_EQ(p.rot_rad, 0.0);
    EXPECT_EQ(p.shift_x, 0.0);
    EXPECT_EQ(p.shift_y, 0.0);
}

TEST(Augment, PureHorizontalFlipReversesColumns) {
    sc::AugmentParams p;
    p.flip_h = true;
    const auto img = ramp_image(6, 8);
    const auto out = sc::apply_augment(img, p);
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 8; ++x)
            for (int c = 0; c < 3; ++c) EXPECT_NEAR(out.at({y, x, c}), img.at({y, 7 - x, c}), 1e-4);
}

TEST(Augment, PureVerticalFlipReversesRows) {
    sc::AugmentParams p;
    p.flip_v = true;
    const auto img = ramp_image(6, 8);
    const auto out = sc::apply_augment(img, p);
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 8; ++x) EXPECT_NEAR(out.at({y, x, 0}), img.at({5 - y, x, 0}), 1e-4);
}

TEST(Augment, ShiftMovesContentTheExpectedDirection) {
    // shift_x of +0.25 on a 8-wide image moves content right by 2 pixels
    sc::AugmentParams p;
    p.shift_x = 0.25;
    const auto img = ramp_image(4, 8);
    const auto out = sc::apply_augment(img, p);
    for (int x = 2; x < 8; ++x) EXPECT_NEAR(out.at({1, x, 0}), img.at({1, x - 2, 0}), 1e-3) << x;
}

TEST(Augment, FullRotationIsIdentityAndHalfTurnFlipsBoth) {
    const auto img = ramp_image(7, 7);
    sc::AugmentParams full;
    full.rot_rad = 2.0 * M_PI;
    const auto spun = sc::apply_augment(img, full);
    for (std::int64_t i = 0; i < img.numel(); ++i) EXPECT_NEAR(spun.at(i), img.at(i), 1e-3);

    sc::AugmentParams half;
    half.rot_rad = M_PI;
    const auto turned = sc::apply_augment(img, half);
    sc::AugmentParams flips;
    flips.flip_h = flips.flip_v = true;
    const auto flipped = sc::apply_augment(img, flips);
    for (std::int64_t i = 0; i < img.numel(); ++i) EXPECT_NEAR(turned.at(i), flipped.at(i), 1e-3);
}

TEST(Augment, ZoomInMagnifiesAboutTheCenter) {
    // zooming in by 2x: the output center pixel equals the input center pixel
    // and the value one step out equals the input half a step out
    const auto img = ramp_image(9, 9);
    sc::AugmentParams p;
    p.zoom = 2.0;
    const auto out = sc::apply_augment(img, p);
    EXPECT_NEAR(out.at({4, 4, 0}), img.at({4, 4, 0}), 1e-3);
    EXPECT_NEAR(out.at({4, 6, 0}), img.at({4, 5, 0}), 1e-3);
}

TEST(Augment, DisabledComponentsDrawNothingFromTheStream) {
    // with everything but shift disabled, the shift draws must line up with a
    // bare rng that only performs the same two draws
    sc::AugmentSpec spec = sc::AugmentSpec::none();
    spec.shift = 0.2;
    sc::Rng a(777), b(777);
    const sc::AugmentParams p = sc::sample_augment(spec, a);
    const double sx = b.uniform(-0.2, 0.2);
    const double sy = b.uniform(-0.2, 0.2);
    EXPECT_EQ(p.shift_x, sx);
    EXPECT_EQ(p.shift_y, sy);
}

TEST(Augment, SameSeedSameTransform) {
    const sc::AugmentSpec spec;
    sc::Rng a(99), b(99), c(100);
    const auto img = ramp_image(12, 12);
    const auto o1 = sc::augment(img, spec, a);
    const auto o2 = sc::augment(img, spec, b);
    const auto o3 = sc::augment(img, spec, c);
    EXPECT_EQ(o1.data, o2.data);
    EXPECT_NE(o1.data, o3.data);
}
