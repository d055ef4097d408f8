#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "statecraft/layers.hpp"
#include "statecraft/ops.hpp"
#include "statecraft/rng.hpp"
#include "statecraft/tensor.hpp"

namespace statecraft {

constexpr int kMaxFanIn = 4;
using FanIn = std::array<int, kMaxFanIn>;  // producer layer indices, -1 padded

// Layers are stored in topological order (builders only reference earlier
// indices), so a forward pass is a single sweep and the tape replays it in
// reverse for backprop.
template <typename T>
struct ModelGraph {
    std::vector<Layer<T>> layers;
    std::vector<FanIn> fan_in;
    int output = -1;
    int backbone_size = 0;  // layers below this index form the backbone

    int add(Layer<T> l, std::initializer_list<int> inputs) { return add(std::move(l), std::vector<int>(inputs)); }

    int add(Layer<T> l, const std::vector<int>& inputs) {
        FanIn in;
        in.fill(-1);
        int k = 0;
        for (int i : inputs) {
            if (i < 0 || i >= static_cast<int>(layers.size()))
                throw ShapeError("graph: input index " + std::to_string(i) + " out of range for layer " + l.name);
            if (k >= kMaxFanIn) throw ShapeError("graph: too many inputs for layer " + l.name);
            in[static_cast<std::size_t>(k++)] = i;
        }
        l.index = static_cast<int>(layers.size());
        layers.push_back(std::move(l));
        fan_in.push_back(in);
        output = layers.back().index;
        resolve(layers.back());
        return output;
    }

    Layer<T>& at(int i) { return layers[static_cast<std::size_t>(i)]; }
    const Layer<T>& at(int i) const { return layers[static_cast<std::size_t>(i)]; }
    int size() const { return static_cast<int>(layers.size()); }

    int find(const std::string& name) const {
        for (const auto& l : layers)
            if (l.name == name) return l.index;
        return -1;
    }

  private:
    const std::vector<int>& in_shape(const Layer<T>& l, int slot = 0) const {
        const int src = fan_in[static_cast<std::size_t>(l.index)][static_cast<std::size_t>(slot)];
        if (src < 0) throw ShapeError("graph: layer " + l.name + " is missing input " + std::to_string(slot));
        return layers[static_cast<std::size_t>(src)].out_shape;
    }

    // Computes out_shape and sizes parameter tensors (zero-initialized;
    // init_params gives them values).
    void resolve(Layer<T>& l) {
        switch (l.kind) {
            case LayerKind::Input:
                if (l.out_shape.empty()) throw ShapeError("graph: input layer needs a shape");
                break;
            case LayerKind::Conv2D: {
                const auto& s = in_shape(l);
                if (s.size() != 3) throw ShapeError("graph: conv input must be HWC");
                const ConvDims d = conv_output_dims(s[0], s[1], l.kh, l.kw, l.sh, l.sw, l.pad);
                l.kernel = Tensor<T>({l.kh, l.kw, s[2], l.filters});
                if (l.has_bias) l.bias = Tensor<T>({l.filters});
                l.out_shape = {d.oh, d.ow, l.filters};
                break;
            }
            case LayerKind::BatchNorm: {
                const auto& s = in_shape(l);
                const int c = s.back();
                if (l.bn_gamma) l.gamma = Tensor<T>({c});
                l.beta = Tensor<T>({c});
                l.moving_mean = Tensor<T>({c});
                l.moving_var = Tensor<T>({c});
                l.moving_var.fill(T(1));
                if (l.gamma.numel()) l.gamma.fill(T(1));
                l.out_shape = s;
                break;
            }
            case LayerKind::Activation:
            case LayerKind::Dropout:
                l.out_shape = in_shape(l);
                break;
            case LayerKind::GlobalAvgPool: {
                const auto& s = in_shape(l);
                if (s.size() != 3) throw ShapeError("graph: global_avg_pool input must be HWC");
                l.out_shape = {s[2]};
                break;
            }
            case LayerKind::Dense: {
                const auto& s = in_shape(l);
                if (s.size() != 1) throw ShapeError("graph: dense input must be flat, got rank " + std::to_string(s.size()));
                l.kernel = Tensor<T>({s[0], l.units});
                if (l.has_bias) l.bias = Tensor<T>({l.units});
                l.out_shape = {l.units};
                break;
            }
            case LayerKind::Concat: {
                int c = 0;
                std::vector<int> base;
                for (int slot = 0; slot < kMaxFanIn; ++slot) {
                    const int src = fan_in[static_cast<std::size_t>(l.index)][static_cast<std::size_t>(slot)];
                    if (src < 0) break;
                    const auto& s = layers[static_cast<std::size_t>(src)].out_shape;
                    if (base.empty()) base = s;
                    if (s.size() != base.size()) throw ShapeError("graph: concat rank mismatch at " + l.name);
                    for (std::size_t d = 0; d + 1 < s.size(); ++d)
                        if (s[d] != base[d]) throw ShapeError("graph: concat spatial mismatch at " + l.name);
                    c += s.back();
                }
                base.back() = c;
                l.out_shape = base;
                break;
            }
            case LayerKind::MaxPool:
            case LayerKind::AvgPool: {
                const auto& s = in_shape(l);
                if (s.size() != 3) throw ShapeError("graph: pool input must be HWC");
                const ConvDims d = conv_output_dims(s[0], s[1], l.kh, l.kw, l.sh, l.sw, l.pad);
                l.out_shape = {d.oh, d.ow, s.back()};
                break;
            }
        }
    }
};

// ---------- builder helpers ----------

template <typename T>
int add_input(ModelGraph<T>& g, std::string name, int h, int w, int c) {
    Layer<T> l;
    l.kind = LayerKind::Input;
    l.name = std::move(name);
    l.out_shape = {h, w, c};
    return g.add(std::move(l), {});
}

template <typename T>
int add_conv(ModelGraph<T>& g, std::string name, int in, int filters, int kh, int kw, int sh, int sw, Padding pad,
             bool bias) {
    Layer<T> l;
    l.kind = LayerKind::Conv2D;
    l.name = std::move(name);
    l.filters = filters;
    l.kh = kh;
    l.kw = kw;
    l.sh = sh;
    l.sw = sw;
    l.pad = pad;
    l.has_bias = bias;
    return g.add(std::move(l), {in});
}

template <typename T>
int add_batchnorm(ModelGraph<T>& g, std::string name, int in, bool gamma, T momentum = T(0.99), T eps = T(1e-3)) {
    Layer<T> l;
    l.kind = LayerKind::BatchNorm;
    l.name = std::move(name);
    l.bn_gamma = gamma;
    l.bn_momentum = momentum;
    l.bn_eps = eps;
    return g.add(std::move(l), {in});
}

template <typename T>
int add_activation(ModelGraph<T>& g, std::string name, int in, ActFn fn) {
    Layer<T> l;
    l.kind = LayerKind::Activation;
    l.name = std::move(name);
    l.act = fn;
    return g.add(std::move(l), {in});
}

template <typename T>
int add_maxpool(ModelGraph<T>& g, std::string name, int in, int kh, int kw, int sh, int sw, Padding pad) {
    Layer<T> l;
    l.kind = LayerKind::MaxPool;
    l.name = std::move(name);
    l.kh = kh;
    l.kw = kw;
    l.sh = sh;
    l.sw = sw;
    l.pad = pad;
    return g.add(std::move(l), {in});
}

template <typename T>
int add_avgpool(ModelGraph<T>& g, std::string name, int in, int kh, int kw, int sh, int sw, Padding pad) {
    Layer<T> l;
    l.kind = LayerKind::AvgPool;
    l.name = std::move(name);
    l.kh = kh;
    l.kw = kw;
    l.sh = sh;
    l.sw = sw;
    l.pad = pad;
    return g.add(std::move(l), {in});
}

template <typename T>
int add_concat(ModelGraph<T>& g, std::string name, std::initializer_list<int> ins) {
    Layer<T> l;
    l.kind = LayerKind::Concat;
    l.name = std::move(name);
    return g.add(std::move(l), ins);
}

template <typename T>
int add_global_avg_pool(ModelGraph<T>& g, std::string name, int in) {
    Layer<T> l;
    l.kind = LayerKind::GlobalAvgPool;
    l.name = std::move(name);
    return g.add(std::move(l), {in});
}

template <typename T>
int add_dropout(ModelGraph<T>& g, std::string name, int in, double rate) {
    Layer<T> l;
    l.kind = LayerKind::Dropout;
    l.name = std::move(name);
    l.rate = rate;
    return g.add(std::move(l), {in});
}

template <typename T>
int add_dense(ModelGraph<T>& g, std::string name, int in, int units, bool bias = true) {
    Layer<T> l;
    l.kind = LayerKind::Dense;
    l.name = std::move(name);
    l.units = units;
    l.has_bias = bias;
    return g.add(std::move(l), {in});
}

// ---------- parameter utilities ----------

template <typename T>
void init_params(ModelGraph<T>& g, std::uint64_t seed) {
    for (auto& l : g.layers) {
        if (l.kind == LayerKind::Conv2D && l.kernel.numel()) {
            Rng rng(seed, {static_cast<std::uint64_t>(l.index)});
            const std::int64_t fan_in = static_cast<std::int64_t>(l.kh) * l.kw * l.kernel.dim(2);
            const std::int64_t fan_out = static_cast<std::int64_t>(l.kh) * l.kw * l.filters;
            fill_glorot(l.kernel, rng, fan_in, fan_out);
            if (l.bias.numel()) l.bias.fill(T(0));
        } else if (l.kind == LayerKind::Dense && l.kernel.numel()) {
            Rng rng(seed, {static_cast<std::uint64_t>(l.index)});
            fill_glorot(l.kernel, rng, l.kernel.dim(0), l.kernel.dim(1));
            if (l.bias.numel()) l.bias.fill(T(0));
        }
    }
}

template <typename T>
std::int64_t trainable_param_count(ModelGraph<T>& g) {
    std::int64_t n = 0;
    for (auto& l : g.layers) n += layer_trainable_param_count(l);
    return n;
}

template <typename T>
std::int64_t total_param_count(ModelGraph<T>& g) {
    std::int64_t n = 0;
    for (auto& l : g.layers) n += layer_param_count(l);
    return n;
}

// Freezes backbone layers with index < boundary; layers from the boundary up
// (and any attached head) stay trainable.
template <typename T>
void apply_freeze_boundary(ModelGraph<T>& g, int boundary) {
    if (boundary < 0 || boundary > g.size()) throw ConfigError("freeze boundary out of range");
    for (auto& l : g.layers) l.frozen = l.index < boundary;
}

template <typename T>
void freeze_backbone(ModelGraph<T>& g) {
    apply_freeze_boundary(g, g.backbone_size);
}

// ---------- execution tape ----------

// Records one forward sweep: every activation plus per-layer auxiliaries.
// backward() walks the record once in reverse topological order; a producer
// consumed by several layers receives the sum of their input gradients.
template <typename T>
struct GradTape {
    std::vector<Tensor<T>> act;
    std::vector<BatchNormCache<T>> bn;
    std::vector<std::vector<std::int64_t>> pool_argmax;
    std::vector<Tensor<T>> dropout_mask;
    Mode mode = Mode::Infer;
};

template <typename T>
const Tensor<T>& forward(ModelGraph<T>& g, const Tensor<T>& input, Mode mode, GradTape<T>& tape,
                         std::uint64_t dropout_seed = 0) {
    if (g.output < 0) throw StateError("graph: empty model");
    const int n = g.size();
    tape.mode = mode;
    tape.act.assign(static_cast<std::size_t>(n), Tensor<T>());
    tape.bn.assign(static_cast<std::size_t>(n), BatchNormCache<T>());
    tape.pool_argmax.assign(static_cast<std::size_t>(n), {});
    tape.dropout_mask.assign(static_cast<std::size_t>(n), Tensor<T>());

    for (int i = 0; i < n; ++i) {
        Layer<T>& l = g.at(i);
        const auto in_of = [&](int slot) -> const Tensor<T>& {
            return tape.act[static_cast<std::size_t>(g.fan_in[static_cast<std::size_t>(i)][static_cast<std::size_t>(slot)])];
        };
        switch (l.kind) {
            case LayerKind::Input: {
                std::vector<int> want = l.out_shape;
                want.insert(want.begin(), input.dim(0));
                if (input.shape != want)
                    throw ShapeError("graph: input shape " + input.shape_str() + " does not match model input");
                tape.act[static_cast<std::size_t>(i)] = input;
                break;
            }
            case LayerKind::Conv2D:
                tape.act[static_cast<std::size_t>(i)] = conv2d_forward(in_of(0), l.kernel, l.bias, l.sh, l.sw, l.pad);
                break;
            case LayerKind::BatchNorm: {
                // A frozen batch-norm layer behaves as in inference: moving
                // statistics are used and left untouched.
                const Mode eff = (mode == Mode::Train && !l.frozen) ? Mode::Train : Mode::Infer;
                tape.act[static_cast<std::size_t>(i)] =
                    batchnorm_forward(in_of(0), l.gamma, l.beta, l.moving_mean, l.moving_var, l.bn_momentum, l.bn_eps,
                                      eff, eff == Mode::Train ? &tape.bn[static_cast<std::size_t>(i)] : nullptr);
                break;
            }
            case LayerKind::Activation:
                switch (l.act) {
                    case ActFn::ReLU: tape.act[static_cast<std::size_t>(i)] = relu_forward(in_of(0)); break;
                    case ActFn::Softmax: tape.act[static_cast<std::size_t>(i)] = softmax_forward(in_of(0)); break;
                    case ActFn::Linear: tape.act[static_cast<std::size_t>(i)] = in_of(0); break;
                }
                break;
            case LayerKind::GlobalAvgPool:
                tape.act[static_cast<std::size_t>(i)] = global_avg_pool_forward(in_of(0));
                break;
            case LayerKind::Dropout:
                if (mode == Mode::Train && l.rate > 0.0) {
                    Rng rng(dropout_seed, {static_cast<std::uint64_t>(l.index)});
                    tape.act[static_cast<std::size_t>(i)] =
                        dropout_forward(in_of(0), l.rate, rng, tape.dropout_mask[static_cast<std::size_t>(i)]);
                } else {
                    tape.act[static_cast<std::size_t>(i)] = in_of(0);
                }
                break;
            case LayerKind::Dense:
                tape.act[static_cast<std::size_t>(i)] = dense_forward(in_of(0), l.kernel, l.bias);
                break;
            case LayerKind::Concat: {
                std::vector<const Tensor<T>*> xs;
                for (int slot = 0; slot < kMaxFanIn; ++slot) {
                    const int src = g.fan_in[static_cast<std::size_t>(i)][static_cast<std::size_t>(slot)];
                    if (src < 0) break;
                    xs.push_back(&tape.act[static_cast<std::size_t>(src)]);
                }
                tape.act[static_cast<std::size_t>(i)] = concat_forward(xs);
                break;
            }
            case LayerKind::MaxPool: {
                auto r = maxpool_forward(in_of(0), l.kh, l.kw, l.sh, l.sw, l.pad);
                tape.act[static_cast<std::size_t>(i)] = std::move(r.y);
                tape.pool_argmax[static_cast<std::size_t>(i)] = std::move(r.argmax);
                break;
            }
            case LayerKind::AvgPool:
                tape.act[static_cast<std::size_t>(i)] = avgpool_forward(in_of(0), l.kh, l.kw, l.sh, l.sw, l.pad);
                break;
        }
    }
    return tape.act[static_cast<std::size_t>(g.output)];
}

// True for layers whose backward pass must produce an input gradient:
// anything with a trainable-and-unfrozen ancestor needs the flow.
template <typename T>
std::vector<bool> gradient_frontier(ModelGraph<T>& g) {
    std::vector<bool> wants(static_cast<std::size_t>(g.size()), false);
    for (int i = 0; i < g.size(); ++i) {
        Layer<T>& l = g.at(i);
        bool w = layer_trainable_param_count(l) > 0;
        for (int slot = 0; slot < kMaxFanIn && !w; ++slot) {
            const int src = g.fan_in[static_cast<std::size_t>(i)][static_cast<std::size_t>(slot)];
            if (src >= 0 && wants[static_cast<std::size_t>(src)]) w = true;
        }
        wants[static_cast<std::size_t>(i)] = w;
    }
    return wants;
}

template <typename T>
void zero_grads(ModelGraph<T>& g) {
    for (auto& l : g.layers)
        for (auto& p : layer_params(l)) {
            if (!p.grad) continue;
            if (p.grad->same_shape(*p.value))
                p.grad->fill(T(0));
            else
                *p.grad = Tensor<T>(p.value->shape);
        }
}

// Reverse sweep over the tape. d_output is the loss gradient at the graph
// output. Parameter gradients are written into the layers (zeroed first);
// gradients for values feeding several consumers accumulate additively.
template <typename T>
void backward(ModelGraph<T>& g, GradTape<T>& tape, const Tensor<T>& d_output) {
    if (tape.mode != Mode::Train) throw StateError("backward: tape was not recorded in train mode");
    const int n = g.size();
    std::vector<Tensor<T>> dact(static_cast<std::size_t>(n));
    std::vector<bool> wants = gradient_frontier(g);
    zero_grads(g);
    dact[static_cast<std::size_t>(g.output)] = d_output;

    auto accum = [&](int idx, Tensor<T>&& grad) {
        Tensor<T>& slot = dact[static_cast<std::size_t>(idx)];
        if (slot.numel() == 0)
            slot = std::move(grad);
        else
            for (std::int64_t k = 0; k < slot.numel(); ++k) slot.at(k) += grad.at(k);
    };

    for (int i = n - 1; i >= 0; --i) {
        Layer<T>& l = g.at(i);
        Tensor<T>& dy = dact[static_cast<std::size_t>(i)];
        if (dy.numel() == 0) continue;  // no consumer needed this value
        if (!wants[static_cast<std::size_t>(i)]) continue;
        const int in0 = g.fan_in[static_cast<std::size_t>(i)][0];
        const bool learn = !l.frozen;
        const bool flow = in0 >= 0 && wants[static_cast<std::size_t>(in0)];
        switch (l.kind) {
            case LayerKind::Input:
                break;
            case LayerKind::Conv2D: {
                if (!learn && !flow) break;
                auto gr = conv2d_backward(tape.act[static_cast<std::size_t>(in0)], l.kernel, dy, l.sh, l.sw, l.pad,
                                          l.has_bias, learn, flow);
                if (learn) {
                    for (std::int64_t k = 0; k < gr.dkernel.numel(); ++k) l.g_kernel.at(k) += gr.dkernel.at(k);
                    if (l.has_bias)
                        for (std::int64_t k = 0; k < gr.dbias.numel(); ++k) l.g_bias.at(k) += gr.dbias.at(k);
                }
                if (flow) accum(in0, std::move(gr.dx));
                break;
            }
            case LayerKind::BatchNorm: {
                if (!learn && !flow) break;
                if (learn) {
                    auto gr = batchnorm_backward(tape.bn[static_cast<std::size_t>(i)], l.gamma, dy);
                    if (l.gamma.numel())
                        for (std::int64_t k = 0; k < gr.dgamma.numel(); ++k) l.g_gamma.at(k) += gr.dgamma.at(k);
                    for (std::int64_t k = 0; k < gr.dbeta.numel(); ++k) l.g_beta.at(k) += gr.dbeta.at(k);
                    if (flow) accum(in0, std::move(gr.dx));
                } else if (flow) {
                    accum(in0, batchnorm_backward_fixed_stats(l.gamma, l.moving_var, l.bn_eps, dy));
                }
                break;
            }
            case LayerKind::Activation:
                if (!flow) break;
                switch (l.act) {
                    case ActFn::ReLU:
                        accum(in0, relu_backward(tape.act[static_cast<std::size_t>(in0)], dy));
                        break;
                    case ActFn::Softmax:
                        accum(in0, softmax_backward(tape.act[static_cast<std::size_t>(i)], dy));
                        break;
                    case ActFn::Linear: {
                        Tensor<T> copy = dy;
                        accum(in0, std::move(copy));
                        break;
                    }
                }
                break;
            case LayerKind::GlobalAvgPool:
                if (flow) accum(in0, global_avg_pool_backward(dy, tape.act[static_cast<std::size_t>(in0)].shape));
                break;
            case LayerKind::Dropout:
                if (!flow) break;
                if (tape.dropout_mask[static_cast<std::size_t>(i)].numel())
                    accum(in0, dropout_backward(tape.dropout_mask[static_cast<std::size_t>(i)], dy));
                else {
                    Tensor<T> copy = dy;
                    accum(in0, std::move(copy));
                }
                break;
            case LayerKind::Dense: {
                if (!learn && !flow) break;
                auto gr = dense_backward(tape.act[static_cast<std::size_t>(in0)], l.kernel, dy, l.has_bias, learn, flow);
                if (learn) {
                    for (std::int64_t k = 0; k < gr.dw.numel(); ++k) l.g_kernel.at(k) += gr.dw.at(k);
                    if (l.has_bias)
                        for (std::int64_t k = 0; k < gr.db.numel(); ++k) l.g_bias.at(k) += gr.db.at(k);
                }
                if (flow) accum(in0, std::move(gr.dx));
                break;
            }
            case LayerKind::Concat: {
                std::vector<std::vector<int>> shapes;
                std::vector<int> srcs;
                for (int slot = 0; slot < kMaxFanIn; ++slot) {
                    const int src = g.fan_in[static_cast<std::size_t>(i)][static_cast<std::size_t>(slot)];
                    if (src < 0) break;
                    srcs.push_back(src);
                    shapes.push_back(tape.act[static_cast<std::size_t>(src)].shape);
                }
                auto parts = concat_backward(dy, shapes);
                for (std::size_t s = 0; s < srcs.size(); ++s)
                    if (wants[static_cast<std::size_t>(srcs[s])]) accum(srcs[s], std::move(parts[s]));
                break;
            }
            case LayerKind::MaxPool:
                if (flow)
                    accum(in0, maxpool_backward(tape.pool_argmax[static_cast<std::size_t>(i)], dy,
                                                tape.act[static_cast<std::size_t>(in0)].shape));
                break;
            case LayerKind::AvgPool:
                if (flow)
                    accum(in0, avgpool_backward(dy, tape.act[static_cast<std::size_t>(in0)].shape, l.kh, l.kw, l.sh,
                                                l.sw, l.pad));
                break;
        }
        if (i != g.output) dy = Tensor<T>();  // release as we go
    }
}

}  // namespace statecraft
