#include <gtest/gtest.h>

#include <cmath>

#include <statecraft/statecraft.hpp>

#include "oracles.hpp"

namespace sc = statecraft;
using oracle::fill_random;

namespace {

// Small but representative network touching every layer kind, in f64 for
// finite-difference comparison. Branch + concat exercises multi-consumer
// gradient accumulation (the input feeds two branches).
sc::ModelGraph<double> make_net(sc::Rng& rng) {
    sc::ModelGraph<double> g;
    const int in = sc::add_input(g, "in", 6, 6, 2);
    const int conv = sc::add_conv(g, "conv", in, 3, 3, 3, 1, 1, sc::Padding::Same, false);
    const int bn = sc::add_batchnorm<double>(g, "bn", conv, true);
    const int act = sc::add_activation(g, "act", bn, sc::ActFn::ReLU);
    const int b1 = sc::add_conv(g, "b1", act, 2, 1, 1, 1, 1, sc::Padding::Same, true);
    const int b2 = sc::add_maxpool(g, "b2", act, 3, 3, 1, 1, sc::Padding::Same);
    const int b2p = sc::add_conv(g, "b2p", b2, 2, 1, 1, 1, 1, sc::Padding::Same, true);
    const int cat = sc::add_concat(g, "cat", {b1, b2p});
    const int ap = sc::add_avgpool(g, "ap", cat, 2, 2, 2, 2, sc::Padding::Valid);
    const int gap = sc::add_global_avg_pool(g, "gap", ap);
    const int drop = sc::add_dropout(g, "drop", gap, 0.25);
    const int dense = sc::add_dense(g, "dense", drop, 3, true);
    sc::add_activation(g, "softmax", dense, sc::ActFn::Softmax);
    g.backbone_size = g.size();
    sc::init_params(g, 99);
    // batch-norm starts at identity; random moving stats make the frozen
    // path distinguishable from the training path
    for (auto& l : g.layers)
        if (l.kind == sc::LayerKind::BatchNorm) {
            fill_random(l.moving_mean, rng, -0.2, 0.2);
            fill_random(l.moving_var, rng, 0.8, 1.2);
        }
    return g;
}

double graph_loss(sc::ModelGraph<double>& g, const sc::Tensor<double>& x, const std::vector<int>& labels,
                  std::uint64_t drop_seed) {
    sc::GradTape<double> tape;
    // moving stats drift with every train-mode call; keep them pinned so the
    // loss is a pure function for finite differencing
    std::vector<sc::Tensor<double>> mm, mv;
    for (auto& l : g.layers) {
        mm.push_back(l.moving_mean);
        mv.push_back(l.moving_var);
    }
    const auto& probs = sc::forward(g, x, sc::Mode::Train, tape, drop_seed);
    const double loss = sc::cross_entropy_forward(probs, labels);
    for (std::size_t i = 0; i < g.layers.size(); ++i) {
        g.layers[i].moving_mean = std::move(mm[i]);
        g.layers[i].moving_var = std::move(mv[i]);
    }
    return loss;
}

}  // namespace

TEST(Graph, EndToEndGradientsMatchFiniteDifferences) {
    sc::Rng rng(301);
    sc::ModelGraph<double> g = make_net(rng);
    sc::Tensor<double> x({3, 6, 6, 2});
    fill_random(x, rng);
    const std::vector<int> labels = {0, 2, 1};
    const std::uint64_t drop_seed = 424242;

    sc::GradTape<double> tape;
    const auto& probs = sc::forward(g, x, sc::Mode::Train, tape, drop_seed);
    const auto dprobs = sc::cross_entropy_backward(probs, labels);
    sc::backward(g, tape, dprobs);

    auto loss = [&] { return graph_loss(g, x, labels, drop_seed); };
    for (auto& l : g.layers) {
        for (auto& p : sc::layer_params(l)) {
            if (!p.trainable) continue;
            const double err = oracle::max_grad_err(*p.value, *p.grad, loss);
            EXPECT_LT(err, 1e-4) << p.name;
        }
    }
}

TEST(Graph, FrozenLayersGetNoGradientsAndBatchNormStatsFreeze) {
    sc::Rng rng(302);
    sc::ModelGraph<double> g = make_net(rng);
    sc::apply_freeze_boundary(g, g.find("b1"));  // conv, bn frozen; later layers live

    sc::Tensor<double> x({2, 6, 6, 2});
    fill_random(x, rng);
    const sc::Tensor<double> frozen_mm = g.at(g.find("bn")).moving_mean;

    sc::GradTape<double> tape;
    const auto& probs = sc::forward(g, x, sc::Mode::Train, tape, 7);
    sc::backward(g, tape, sc::cross_entropy_backward(probs, {0, 1}));

    // frozen batch norm ran in inference mode: moving stats untouched
    for (std::int64_t i = 0; i < frozen_mm.numel(); ++i)
        EXPECT_EQ(g.at(g.find("bn")).moving_mean.at(i), frozen_mm.at(i));

    for (auto& l : g.layers) {
        for (auto& p : sc::layer_params(l)) {
            if (!p.grad || !p.grad->numel()) continue;
            double mag = 0;
            for (const auto& v : p.grad->data) mag += std::abs(v);
            if (l.frozen)
                EXPECT_EQ(mag, 0.0) << p.name;
            else if (p.trainable)
                EXPECT_GT(mag, 0.0) << p.name;
        }
    }
}

TEST(Graph, FrozenBatchNormGradientFlowsThroughFixedStats) {
    // freezing the batch norm must not block gradients for the conv below it
    sc::Rng rng(303);
    sc::ModelGraph<double> g = make_net(rng);
    const int bn = g.find("bn");
    g.at(bn).frozen = true;  // only the bn layer

    sc::Tensor<double> x({2, 6, 6, 2});
    fill_random(x, rng);
    sc::GradTape<double> tape;
    const auto& probs = sc::forward(g, x, sc::Mode::Train, tape, 7);
    sc::backward(g, tape, sc::cross_entropy_backward(probs, {0, 1}));

    double conv_grad = 0;
    for (const auto& v : g.at(g.find("conv")).g_kernel.data) conv_grad += std::abs(v);
    EXPECT_GT(conv_grad, 0.0);

    // and the flowed gradient is still correct against finite differences
    auto loss = [&] { return graph_loss(g, x, {0, 1}, 7); };
    sc::Layer<double>& conv = g.at(g.find("conv"));
    EXPECT_LT(oracle::max_grad_err(conv.kernel, conv.g_kernel, loss), 1e-4);
}

TEST(Graph, DropoutIsDeterministicPerSeedAndIdentityInInference) {
    sc::Rng rng(304);
    sc::ModelGraph<double> g = make_net(rng);
    sc::Tensor<double> x({2, 6, 6, 2});
    fill_random(x, rng);

    sc::GradTape<double> t1, t2, t3;
    const auto p1 = sc::forward(g, x, sc::Mode::Train, t1, 5);
    const auto p2 = sc::forward(g, x, sc::Mode::Train, t2, 5);
    const auto p3 = sc::forward(g, x, sc::Mode::Train, t3, 6);
    EXPECT_EQ(p1.data, p2.data);
    EXPECT_NE(p1.data, p3.data);

    sc::GradTape<double> ti;
    sc::forward(g, x, sc::Mode::Infer, ti, 5);
    const int drop = g.find("drop");
    const int gap = g.find("gap");
    EXPECT_EQ(ti.act[static_cast<std::size_t>(drop)].data, ti.act[static_cast<std::size_t>(gap)].data);
}

TEST(Graph, BackwardRequiresTrainTape) {
    sc::Rng rng(305);
    sc::ModelGraph<double> g = make_net(rng);
    sc::Tensor<double> x({2, 6, 6, 2});
    fill_random(x, rng);
    sc::GradTape<double> tape;
    const auto& probs = sc::forward(g, x, sc::Mode::Infer, tape);
    EXPECT_THROW(sc::backward(g, tape, sc::cross_entropy_backward(probs, {0, 1})), sc::StateError);
}

TEST(Graph, InputShapeMismatchIsRejected) {
    sc::Rng rng(306);
    sc::ModelGraph<double> g = make_net(rng);
    sc::Tensor<double> bad({2, 5, 6, 2});
    sc::GradTape<double> tape;
    EXPECT_THROW(sc::forward(g, bad, sc::Mode::Infer, tape), sc::ShapeError);
}

TEST(Graph, ParamCountHelpersRespectFreezing) {
    sc::Rng rng(307);
    sc::ModelGraph<double> g = make_net(rng);
    const std::int64_t total = sc::total_param_count(g);
    const std::int64_t all_trainable = sc::trainable_param_count(g);
    EXPECT_GT(total, all_trainable);  // moving stats are never trainable

    sc::apply_freeze_boundary(g, g.size());
    EXPECT_EQ(sc::trainable_param_count(g), 0);
    sc::apply_freeze_boundary(g, 0);
    EXPECT_EQ(sc::trainable_param_count(g), all_trainable);
    EXPECT_THROW(sc::apply_freeze_boundary(g, g.size() + 1), sc::ConfigError);
    EXPECT_THROW(sc::apply_freeze_boundary(g, -1), sc::ConfigError);
}

TEST(Graph, BuilderValidatesWiring) {
    sc::ModelGraph<float> g;
    sc::add_input(g, "in", 4, 4, 1);
    EXPECT_THROW(sc::add_conv(g, "c", 5, 1, 3, 3, 1, 1, sc::Padding::Same, true), sc::ShapeError);
    EXPECT_EQ(g.find("nope"), -1);
    EXPECT_EQ(g.find("in"), 0);
}
