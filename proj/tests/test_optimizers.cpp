#include <gtest/gtest.h>

#include <cmath>

#include <statecraft/statecraft.hpp>

#include "oracles.hpp"

namespace sc = statecraft;

namespace {

// Smallest possible trainable graph: one dense weight, no bias. Gradients
// are injected by hand so the optimizer is exercised in isolation.
struct OneParam {
    sc::ModelGraph<double> g;
    explicit OneParam(double w0) {
        const int in = sc::add_input(g, "in", 1, 1, 1);
        const int gap = sc::add_global_avg_pool(g, "gap", in);
        sc::add_dense(g, "w", gap, 1, /*bias=*/false);
        g.layers.back().kernel.data[0] = w0;
        g.layers.back().g_kernel = sc::Tensor<double>({1, 1});
    }
    void set_grad(double v) { g.layers.back().g_kernel.data[0] = v; }
    double value() const { return g.layers.back().kernel.data[0]; }
};

// deterministic but non-trivial gradient sequence
double fake_grad(int t) { return std::sin(0.7 * t + 0.3) + 0.2 * t; }

}  // namespace

TEST(Optimizers, AdamMatchesScalarReferenceOverFiveSteps) {
    OneParam p(0.5);
    sc::AdamConfig cfg;
    cfg.lr = 1e-3;
    sc::Optimizer<double> opt(cfg, 0.0);
    opt.attach(p.g);

    oracle::AdamRef ref;
    double theta = 0.5;
    for (int t = 1; t <= 5; ++t) {
        const double g = fake_grad(t);
        p.set_grad(g);
        opt.step();
        theta = ref.step(theta, g, cfg.lr, cfg.beta1, cfg.beta2, cfg.eps);
        ASSERT_LT(std::abs(p.value() - theta), 1e-10) << "step " << t;
    }
    EXPECT_EQ(opt.steps(), 5);
}

TEST(Optimizers, SgdNesterovMatchesScalarReferenceOverFiveSteps) {
    for (const bool nesterov : {true, false}) {
        OneParam p(-0.3);
        sc::SgdConfig cfg;
        cfg.lr = 0.05;
        cfg.momentum = 0.9;
        cfg.nesterov = nesterov;
        sc::Optimizer<double> opt(cfg);
        opt.attach(p.g);

        oracle::SgdRef ref;
        double theta = -0.3;
        for (int t = 1; t <= 5; ++t) {
            const double g = fake_grad(t);
            p.set_grad(g);
            opt.step();
            theta = ref.step(theta, g, cfg.lr, cfg.momentum, nesterov);
            ASSERT_LT(std::abs(p.value() - theta), 1e-10) << "nesterov=" << nesterov << " step " << t;
        }
    }
}

TEST(Optimizers, RmspropMatchesScalarReferenceOverFiveSteps) {
    OneParam p(1.2);
    sc::RmspropConfig cfg;
    cfg.lr = 0.01;
    sc::Optimizer<double> opt(cfg);
    opt.attach(p.g);

    oracle::RmspropRef ref;
    double theta = 1.2;
    for (int t = 1; t <= 5; ++t) {
        const double g = fake_grad(t);
        p.set_grad(g);
        opt.step();
        theta = ref.step(theta, g, cfg.lr, cfg.rho, cfg.eps);
        ASSERT_LT(std::abs(p.value() - theta), 1e-10) << "step " << t;
    }
}

TEST(Optimizers, L2AddsDecayTermToGradient) {
    OneParam p(2.0);
    sc::SgdConfig cfg;
    cfg.lr = 0.1;
    cfg.momentum = 0.0;
    cfg.nesterov = false;
    sc::Optimizer<double> opt(cfg, /*l2=*/0.5);
    opt.attach(p.g);
    p.set_grad(1.0);
    opt.step();
    // effective gradient 1 + 0.5 * 2 = 2, so theta = 2 - 0.1 * 2
    EXPECT_NEAR(p.value(), 1.8, 1e-12);
    EXPECT_THROW(sc::Optimizer<double>(cfg, -0.1), sc::ConfigError);
}

TEST(Optimizers, LearningRateStepsDownByFactorTenWithFloor) {
    sc::AdamConfig cfg;
    cfg.lr = 1e-5;
    sc::Optimizer<double> opt(cfg);
    opt.step_lr_down();
    EXPECT_DOUBLE_EQ(opt.lr(), 1e-6);
    opt.step_lr_down();
    EXPECT_DOUBLE_EQ(opt.lr(), 1e-6);  // clamped at the floor
    opt.set_lr(0.5);
    opt.step_lr_down(2.0, 1e-6);
    EXPECT_DOUBLE_EQ(opt.lr(), 0.25);
    EXPECT_THROW(opt.step_lr_down(1.0), sc::ConfigError);
}

TEST(Optimizers, AttachSkipsFrozenAndNonTrainable) {
    sc::ModelGraph<float> g = sc::build_mini_inception<float>(32);
    sc::attach_gap_classifier(g, 3);
    sc::init_params(g, 1);
    sc::freeze_backbone(g);
    sc::Optimizer<float> opt(sc::AdamConfig{});
    opt.attach(g);
    std::int64_t attached = 0;
    for (const auto& s : opt.slots()) {
        attached += s.value->numel();
        EXPECT_TRUE(s.param.find("moving") == std::string::npos) << s.param;
    }
    EXPECT_EQ(attached, sc::trainable_param_count(g));
    EXPECT_GT(attached, 0);

    sc::apply_freeze_boundary(g, 0);
    opt.attach(g);
    std::int64_t all = 0;
    for (const auto& s : opt.slots()) all += s.value->numel();
    EXPECT_EQ(all, sc::trainable_param_count(g));
    EXPECT_GT(all, attached);
}

TEST(Optimizers, StepWithoutAttachIsAnError) {
    sc::Optimizer<double> opt(sc::AdamConfig{});
    EXPECT_THROW(opt.step(), sc::StateError);
}

TEST(Optimizers, NamesAndRates) {
    EXPECT_STREQ(sc::optimizer_name(sc::AdamConfig{}), "adam");
    EXPECT_STREQ(sc::optimizer_name(sc::SgdConfig{}), "sgd");
    EXPECT_STREQ(sc::optimizer_name(sc::RmspropConfig{}), "rmsprop");
    EXPECT_DOUBLE_EQ(sc::optimizer_lr(sc::AdamConfig{}), 1e-5);
    EXPECT_DOUBLE_EQ(sc::optimizer_lr(sc::SgdConfig{}), 1e-4);
    EXPECT_DOUBLE_EQ(sc::optimizer_lr(sc::RmspropConfig{}), 1e-5);
}
