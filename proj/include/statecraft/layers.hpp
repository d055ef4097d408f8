#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "statecraft/ops.hpp"
#include "statecraft/tensor.hpp"

namespace statecraft {

enum class LayerKind { Input, Conv2D, BatchNorm, Activation, GlobalAvgPool, Dropout, Dense, Concat, MaxPool, AvgPool };
enum class ActFn { ReLU, Softmax, Linear };

inline const char* layer_kind_name(LayerKind k) {
    switch (k) {
        case LayerKind::Input: return "input";
        case LayerKind::Conv2D: return "conv2d";
        case LayerKind::BatchNorm: return "batch_norm";
        case LayerKind::Activation: return "activation";
        case LayerKind::GlobalAvgPool: return "global_avg_pool";
        case LayerKind::Dropout: return "dropout";
        case LayerKind::Dense: return "dense";
        case LayerKind::Concat: return "concat";
        case LayerKind::MaxPool: return "max_pool";
        case LayerKind::AvgPool: return "avg_pool";
    }
    return "?";
}

template <typename T>
struct Layer {
    LayerKind kind = LayerKind::Input;
    std::string name;
    int index = -1;
    bool frozen = false;

    // conv / dense / pool configuration
    int filters = 0, kh = 0, kw = 0, sh = 1, sw = 1;
    Padding pad = Padding::Same;
    bool has_bias = true;
    int units = 0;

    // batch norm configuration
    T bn_momentum = T(0.99);
    T bn_eps = T(1e-3);
    bool bn_gamma = true;

    ActFn act = ActFn::ReLU;
    double rate = 0.0;  // dropout

    // parameters (empty tensors when absent)
    Tensor<T> kernel, bias, gamma, beta, moving_mean, moving_var;
    // gradients, same shapes as their parameters
    Tensor<T> g_kernel, g_bias, g_gamma, g_beta;

    std::vector<int> out_shape;  // per-sample shape, no batch axis
};

template <typename T>
struct ParamRef {
    std::string name;
    Tensor<T>* value = nullptr;
    Tensor<T>* grad = nullptr;
    bool trainable = false;  // false for moving statistics, regardless of freezing
};

// Enumerates parameter tensors in a stable order. Moving statistics are
// included (they are saved/loaded) but never marked trainable.
template <typename T>
std::vector<ParamRef<T>> layer_params(Layer<T>& l) {
    std::vector<ParamRef<T>> out;
    auto push = [&](const char* n, Tensor<T>& v, Tensor<T>* g, bool trainable) {
        if (v.numel() == 0) return;
        out.push_back({l.name + "/" + n, &v, g, trainable});
    };
    switch (l.kind) {
        case LayerKind::Conv2D:
            push("kernel", l.kernel, &l.g_kernel, true);
            push("bias", l.bias, &l.g_bias, true);
            break;
        case LayerKind::Dense:
            push("kernel", l.kernel, &l.g_kernel, true);
            push("bias", l.bias, &l.g_bias, true);
            break;
        case LayerKind::BatchNorm:
            push("gamma", l.gamma, &l.g_gamma, true);
            push("beta", l.beta, &l.g_beta, true);
            push("moving_mean", l.moving_mean, nullptr, false);
            push("moving_variance", l.moving_var, nullptr, false);
            break;
        default:
            break;
    }
    return out;
}

template <typename T>
std::int64_t layer_param_count(Layer<T>& l) {
    std::int64_t n = 0;
    for (const auto& p : layer_params(l)) n += p.value->numel();
    return n;
}

template <typename T>
std::int64_t layer_trainable_param_count(Layer<T>& l) {
    if (l.frozen) return 0;
    std::int64_t n = 0;
    for (const auto& p : layer_params(l))
        if (p.trainable) n += p.value->numel();
    return n;
}

}  // namespace statecraft
