#include <gtest/gtest.h>

#include <statecraft/statecraft.hpp>

namespace sc = statecraft;

TEST(Smoke, UmbrellaHeaderCompilesAndTinyForwardRuns) {
    sc::ModelGraph<float> g = sc::build_mini_inception<float>(32);
    sc::attach_gap_classifier(g, 4);
    sc::init_params(g, 1);
    sc::Tensor<float> x({2, 32, 32, 3});
    sc::Rng rng(7);
    for (auto& v : x.data) v = static_cast<float>(rng.uniform(-1.0, 1.0));
    sc::GradTape<float> tape;
    sc::forward(g, x, sc::Mode::Infer, tape);
    const auto& probs = tape.act[static_cast<std::size_t>(g.output)];
    ASSERT_EQ(probs.shape, (std::vector<int>{2, 4}));
    for (int b = 0; b < 2; ++b) {
        double s = 0;
        for (int k = 0; k < 4; ++k) s += probs.at({b, k});
        EXPECT_NEAR(s, 1.0, 1e-5);
    }
}
