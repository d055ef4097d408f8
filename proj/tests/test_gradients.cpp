// Central finite-difference checks (f64, h = 1e-5) for every operation's
// backward pass, at least 20 random instances each.

#include <gtest/gtest.h>

#include <cmath>

#include <statecraft/statecraft.hpp>

#include "oracles.hpp"

namespace sc = statecraft;
using oracle::fill_random;
using oracle::max_grad_err;
using oracle::Projection;

namespace {

constexpr double kTol = 1e-4;
constexpr int kInstances = 20;

// keep ReLU inputs away from the kink where finite differences are invalid
void nudge_from_zero(sc::Tensor<double>& t, double margin = 0.05) {
    for (auto& v : t.data)
        if (std::abs(v) < margin) v = v < 0 ? v - margin : v + margin;
}

}  // namespace

TEST(Gradients, Conv2d) {
    sc::Rng rng(201);
    for (int inst = 0; inst < kInstances; ++inst) {
        const int n = 1 + static_cast<int>(rng.uniform_int(0, 1));
        const int h = 4 + static_cast<int>(rng.uniform_int(0, 2));
        const int w = 4 + static_cast<int>(rng.uniform_int(0, 2));
        const int ci = 1 + static_cast<int>(rng.uniform_int(0, 1));
        const int co = 1 + static_cast<int>(rng.uniform_int(0, 2));
        const int k = rng.bernoulli(0.5) ? 3 : 1;
        const int s = rng.bernoulli(0.5) ? 2 : 1;
        const sc::Padding pad = rng.bernoulli(0.5) ? sc::Padding::Same : sc::Padding::Valid;
        const bool bias = rng.bernoulli(0.5);

        sc::Tensor<double> x({n, h, w, ci}), kern({k, k, ci, co});
        sc::Tensor<double> b = bias ? sc::Tensor<double>({co}) : sc::Tensor<double>();
        fill_random(x, rng);
        fill_random(kern, rng);
        if (bias) fill_random(b, rng);

        const auto y = sc::conv2d_forward(x, kern, b, s, s, pad);
        Projection proj(y.numel(), rng);
        const auto dy = proj.as_dy(y.shape);
        const auto grads = sc::conv2d_backward(x, kern, dy, s, s, pad, bias);

        auto loss = [&] { return proj.apply(sc::conv2d_forward(x, kern, b, s, s, pad)); };
        EXPECT_LT(max_grad_err(x, grads.dx, loss), kTol) << "dx inst " << inst;
        EXPECT_LT(max_grad_err(kern, grads.dkernel, loss), kTol) << "dkernel inst " << inst;
        if (bias) EXPECT_LT(max_grad_err(b, grads.dbias, loss), kTol) << "dbias inst " << inst;
    }
}

TEST(Gradients, Dense) {
    sc::Rng rng(202);
    for (int inst = 0; inst < kInstances; ++inst) {
        const int n = 2 + static_cast<int>(rng.uniform_int(0, 2));
        const int in = 3 + static_cast<int>(rng.uniform_int(0, 3));
        const int out = 2 + static_cast<int>(rng.uniform_int(0, 3));
        const bool bias = rng.bernoulli(0.5);
        sc::Tensor<double> x({n, in}), w({in, out});
        sc::Tensor<double> b = bias ? sc::Tensor<double>({out}) : sc::Tensor<double>();
        fill_random(x, rng);
        fill_random(w, rng);
        if (bias) fill_random(b, rng);

        const auto y = sc::dense_forward(x, w, b);
        Projection proj(y.numel(), rng);
        const auto dy = proj.as_dy(y.shape);
        const auto grads = sc::dense_backward(x, w, dy, bias);

        auto loss = [&] { return proj.apply(sc::dense_forward(x, w, b)); };
        EXPECT_LT(max_grad_err(x, grads.dx, loss), kTol) << inst;
        EXPECT_LT(max_grad_err(w, grads.dw, loss), kTol) << inst;
        if (bias) EXPECT_LT(max_grad_err(b, grads.db, loss), kTol) << inst;
    }
}

TEST(Gradients, BatchNormTrainMode) {
    sc::Rng rng(203);
    for (int inst = 0; inst < kInstances; ++inst) {
        const int n = 2 + static_cast<int>(rng.uniform_int(0, 2));
        const int c = 1 + static_cast<int>(rng.uniform_int(0, 2));
        const bool spatial = rng.bernoulli(0.5);
        const bool scaled = rng.bernoulli(0.5);
        sc::Tensor<double> x = spatial ? sc::Tensor<double>({n, 3, 3, c}) : sc::Tensor<double>({n, c});
        fill_random(x, rng, -2.0, 2.0);
        sc::Tensor<double> gamma = scaled ? sc::Tensor<double>({c}) : sc::Tensor<double>();
        sc::Tensor<double> beta({c}), mm({c}), mv({c});
        if (scaled) fill_random(gamma, rng, 0.5, 1.5);
        fill_random(beta, rng);
        mv.fill(1.0);

        auto run = [&](sc::BatchNormCache<double>* cache) {
            sc::Tensor<double> mm2 = mm, mv2 = mv;  // keep moving stats fixed across calls
            return sc::batchnorm_forward(x, gamma, beta, mm2, mv2, 0.99, 1e-3, sc::Mode::Train, cache);
        };
        sc::BatchNormCache<double> cache;
        const auto y = run(&cache);
        Projection proj(y.numel(), rng);
        const auto dy = proj.as_dy(y.shape);
        auto grads = sc::batchnorm_backward(cache, gamma, dy);

        auto loss = [&] { return proj.apply(run(nullptr)); };
        EXPECT_LT(max_grad_err(x, grads.dx, loss), kTol) << inst;
        EXPECT_LT(max_grad_err(beta, grads.dbeta, loss), kTol) << inst;
        if (scaled) EXPECT_LT(max_grad_err(gamma, grads.dgamma, loss), kTol) << inst;
    }
}

TEST(Gradients, BatchNormFixedStats) {
    sc::Rng rng(204);
    for (int inst = 0; inst < kInstances; ++inst) {
        const int c = 1 + static_cast<int>(rng.uniform_int(0, 3));
        sc::Tensor<double> x({2, 2, 2, c});
        fill_random(x, rng);
        sc::Tensor<double> gamma({c}), beta({c}), mm({c}), mv({c});
        fill_random(gamma, rng, 0.5, 1.5);
        fill_random(beta, rng);
        fill_random(mm, rng, -0.5, 0.5);
        fill_random(mv, rng, 0.5, 2.0);

        auto run = [&] {
            sc::Tensor<double> mm2 = mm, mv2 = mv;
            return sc::batchnorm_forward(x, gamma, beta, mm2, mv2, 0.99, 1e-3, sc::Mode::Infer,
                                         static_cast<sc::BatchNormCache<double>*>(nullptr));
        };
        const auto y = run();
        Projection proj(y.numel(), rng);
        const auto dy = proj.as_dy(y.shape);
        const auto dx = sc::batchnorm_backward_fixed_stats(gamma, mv, 1e-3, dy);
        auto loss = [&] { return proj.apply(run()); };
        EXPECT_LT(max_grad_err(x, dx, loss), kTol) << inst;
    }
}

TEST(Gradients, Relu) {
    sc::Rng rng(205);
    for (int inst = 0; inst < kInstances; ++inst) {
        sc::Tensor<double> x({3, 7});
        fill_random(x, rng);
        nudge_from_zero(x);
        const auto y = sc::relu_forward(x);
        Projection proj(y.numel(), rng);
        const auto dx = sc::relu_backward(x, proj.as_dy(y.shape));
        auto loss = [&] { return proj.apply(sc::relu_forward(x)); };
        EXPECT_LT(max_grad_err(x, dx, loss), kTol) << inst;
    }
}

TEST(Gradients, SoftmaxWithProjection) {
    sc::Rng rng(206);
    for (int inst = 0; inst < kInstances; ++inst) {
        sc::Tensor<double> x({2, 5});
        fill_random(x, rng, -2.0, 2.0);
        const auto p = sc::softmax_forward(x);
        Projection proj(p.numel(), rng);
        const auto dx = sc::softmax_backward(p, proj.as_dy(p.shape));
        auto loss = [&] { return proj.apply(sc::softmax_forward(x)); };
        EXPECT_LT(max_grad_err(x, dx, loss), kTol) << inst;
    }
}

TEST(Gradients, SoftmaxCrossEntropyOnLogits) {
    sc::Rng rng(207);
    for (int inst = 0; inst < kInstances; ++inst) {
        const int n = 2 + static_cast<int>(rng.uniform_int(0, 2));
        const int k = 3 + static_cast<int>(rng.uniform_int(0, 3));
        sc::Tensor<double> logits({n, k});
        fill_random(logits, rng, -2.0, 2.0);
        std::vector<int> labels;
        for (int i = 0; i < n; ++i) labels.push_back(static_cast<int>(rng.uniform_int(0, k - 1)));

        const auto p = sc::softmax_forward(logits);
        const auto dp = sc::cross_entropy_backward(p, labels);
        const auto dlogits = sc::softmax_backward(p, dp);
        auto loss = [&] { return static_cast<double>(sc::cross_entropy_forward(sc::softmax_forward(logits), labels)); };
        EXPECT_LT(max_grad_err(logits, dlogits, loss), kTol) << inst;
    }
}

TEST(Gradients, MaxPool) {
    sc::Rng rng(208);
    for (int inst = 0; inst < kInstances; ++inst) {
        const sc::Padding pad = rng.bernoulli(0.5) ? sc::Padding::Same : sc::Padding::Valid;
        const int s = rng.bernoulli(0.5) ? 2 : 1;
        sc::Tensor<double> x({1, 5, 5, 2});
        fill_random(x, rng);
        auto r = sc::maxpool_forward(x, 3, 3, s, s, pad);
        Projection proj(r.y.numel(), rng);
        const auto dx = sc::maxpool_backward(r.argmax, proj.as_dy(r.y.shape), x.shape);
        auto loss = [&] { return proj.apply(sc::maxpool_forward(x, 3, 3, s, s, pad).y); };
        EXPECT_LT(max_grad_err(x, dx, loss), kTol) << inst;
    }
}

TEST(Gradients, AvgPool) {
    sc::Rng rng(209);
    for (int inst = 0; inst < kInstances; ++inst) {
        const sc::Padding pad = rng.bernoulli(0.5) ? sc::Padding::Same : sc::Padding::Valid;
        const int s = rng.bernoulli(0.5) ? 2 : 1;
        sc::Tensor<double> x({2, 5, 5, 1});
        fill_random(x, rng);
        const auto y = sc::avgpool_forward(x, 3, 3, s, s, pad);
        Projection proj(y.numel(), rng);
        const auto dx = sc::avgpool_backward(proj.as_dy(y.shape), x.shape, 3, 3, s, s, pad);
        auto loss = [&] { return proj.apply(sc::avgpool_forward(x, 3, 3, s, s, pad)); };
        EXPECT_LT(max_grad_err(x, dx, loss), kTol) << inst;
    }
}

TEST(Gradients, GlobalAvgPool) {
    sc::Rng rng(210);
    for (int inst = 0; inst < kInstances; ++inst) {
        sc::Tensor<double> x({2, 3, 4, 3});
        fill_random(x, rng);
        const auto y = sc::global_avg_pool_forward(x);
        Projection proj(y.numel(), rng);
        const auto dx = sc::global_avg_pool_backward(proj.as_dy(y.shape), x.shape);
        auto loss = [&] { return proj.apply(sc::global_avg_pool_forward(x)); };
        EXPECT_LT(max_grad_err(x, dx, loss), kTol) << inst;
    }
}

TEST(Gradients, DropoutWithFrozenMask) {
    sc::Rng rng(211);
    for (int inst = 0; inst < kInstances; ++inst) {
        sc::Tensor<double> x({2, 16});
        fill_random(x, rng);
        sc::Tensor<double> mask;
        sc::dropout_forward(x, 0.4, rng, mask);

        auto apply_mask = [&] {
            sc::Tensor<double> y = x;
            for (std::int64_t i = 0; i < y.numel(); ++i) y.at(i) *= mask.at(i);
            return y;
        };
        const auto y = apply_mask();
        Projection proj(y.numel(), rng);
        const auto dx = sc::dropout_backward(mask, proj.as_dy(y.shape));
        auto loss = [&] { return proj.apply(apply_mask()); };
        EXPECT_LT(max_grad_err(x, dx, loss), kTol) << inst;
    }
}

TEST(Gradients, Concat) {
    sc::Rng rng(212);
    for (int inst = 0; inst < kInstances; ++inst) {
        sc::Tensor<double> a({1, 2, 2, 2}), b({1, 2, 2, 3});
        fill_random(a, rng);
        fill_random(b, rng);
        auto run = [&] { return sc::concat_forward<double>({&a, &b}); };
        const auto y = run();
        Projection proj(y.numel(), rng);
        auto parts = sc::concat_backward(proj.as_dy(y.shape), {a.shape, b.shape});
        auto loss = [&] { return proj.apply(run()); };
        EXPECT_LT(max_grad_err(a, parts[0], loss), kTol) << inst;
        EXPECT_LT(max_grad_err(b, parts[1], loss), kTol) << inst;
    }
}
