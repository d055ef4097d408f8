#pragma once

#include <string>

#include "statecraft/common.hpp"
#include "statecraft/graph.hpp"
#include "statecraft/inception_v3.hpp"

namespace statecraft {

// Freeze boundaries into the backbone table: the index of the first layer of
// the block producing the named mixed output. apply_freeze_boundary(g, b)
// freezes every layer with index < b.
inline constexpr int kFreezeMixed7 = 197;
inline constexpr int kFreezeMixed8 = 229;
inline constexpr int kFreezeMixed9 = 249;

inline constexpr int kHeadConvFilters = 1024;
inline constexpr int kDefaultClasses = 11;
inline constexpr double kDefaultDropout = 0.3;

// ---------- Inception-V3 backbone ----------

template <typename T>
ModelGraph<T> build_inception_v3(int input_hw = 299) {
    if (input_hw < 75) throw ConfigError("inception_v3 input must be at least 75x75, got " + std::to_string(input_hw));
    ModelGraph<T> g;
    for (int i = 0; i < detail::kInceptionV3RowCount; ++i) {
        const InceptionRow& r = detail::kInceptionV3Rows[i];
        int idx = -1;
        switch (r.kind) {
            case LayerKind::Input:
                idx = add_input(g, r.name, input_hw, input_hw, 3);
                break;
            case LayerKind::Conv2D:
                idx = add_conv(g, r.name, r.in0, r.filters, r.kh, r.kw, r.sh, r.sw, r.pad, /*bias=*/false);
                break;
            case LayerKind::BatchNorm:
                idx = add_batchnorm(g, r.name, r.in0, /*gamma=*/false);
                break;
            case LayerKind::Activation:
                idx = add_activation(g, r.name, r.in0, ActFn::ReLU);
                break;
            case LayerKind::MaxPool:
                idx = add_maxpool(g, r.name, r.in0, r.kh, r.kw, r.sh, r.sw, r.pad);
                break;
            case LayerKind::AvgPool:
                idx = add_avgpool(g, r.name, r.in0, r.kh, r.kw, r.sh, r.sw, r.pad);
                break;
            case LayerKind::Concat: {
                Layer<T> l;
                l.kind = LayerKind::Concat;
                l.name = r.name;
                std::vector<int> ins;
                for (int in : {r.in0, r.in1, r.in2, r.in3})
                    if (in >= 0) ins.push_back(in);
                idx = g.add(std::move(l), ins);
                break;
            }
            default:
                throw ConfigError("unexpected layer kind in backbone table");
        }
        if (idx != i) throw ConfigError("backbone table index mismatch at layer " + std::to_string(i));
    }
    g.backbone_size = detail::kInceptionV3RowCount;
    return g;
}

// ---------- classification heads ----------

// Full head: 3x3 conv (with bias) -> batchnorm -> relu -> global average
// pool -> dropout -> dense -> softmax. Appended after the current output.
template <typename T>
void attach_head(ModelGraph<T>& g, int classes = kDefaultClasses, double dropout = kDefaultDropout,
                 int conv_filters = kHeadConvFilters) {
    if (classes < 2) throw ConfigError("head needs at least 2 classes, got " + std::to_string(classes));
    int x = g.output;
    x = add_conv(g, "head_conv", x, conv_filters, 3, 3, 1, 1, Padding::Same, /*bias=*/true);
    x = add_batchnorm(g, "head_bn", x, /*gamma=*/true);
    x = add_activation(g, "head_act", x, ActFn::ReLU);
    x = add_global_avg_pool(g, "head_gap", x);
    x = add_dropout(g, "head_dropout", x, dropout);
    x = add_dense(g, "head_dense", x, classes, /*bias=*/true);
    x = add_activation(g, "head_softmax", x, ActFn::Softmax);
    g.output = x;
}

// Minimal classifier for backbone pretraining: global average pool -> dense
// -> softmax. The dense layer is discarded when the backbone is exported.
template <typename T>
void attach_gap_classifier(ModelGraph<T>& g, int classes) {
    if (classes < 2) throw ConfigError("classifier needs at least 2 classes, got " + std::to_string(classes));
    int x = g.output;
    x = add_global_avg_pool(g, "probe_gap", x);
    x = add_dense(g, "probe_dense", x, classes, /*bias=*/true);
    x = add_activation(g, "probe_softmax", x, ActFn::Softmax);
    g.output = x;
}

// ---------- small backbone for fast experiments ----------

namespace detail {

template <typename T>
int mini_conv_bn(ModelGraph<T>& g, const std::string& stem, int in, int filters, int kh, int kw, int sh, int sw,
                 Padding pad) {
    int x = add_conv(g, stem + "_conv", in, filters, kh, kw, sh, sw, pad, /*bias=*/false);
    x = add_batchnorm(g, stem + "_bn", x, /*gamma=*/false);
    return add_activation(g, stem + "_act", x, ActFn::ReLU);
}

}  // namespace detail

// Three-block miniature of the same design: each block concatenates a 1x1
// branch, a 1x1->3x3 branch, and a maxpool->1x1 projection branch. Block
// widths 32/64/128, 64x64 input, 8x8x128 output feature map.
template <typename T>
ModelGraph<T> build_mini_inception(int input_hw = 64) {
    if (input_hw < 16) throw ConfigError("mini backbone input must be at least 16x16, got " + std::to_string(input_hw));
    ModelGraph<T> g;
    int x = add_input(g, "input", input_hw, input_hw, 3);
    x = detail::mini_conv_bn(g, "stem", x, 16, 3, 3, 2, 2, Padding::Same);
    const int widths[3] = {32, 64, 128};
    for (int b = 0; b < 3; ++b) {
        const std::string p = "b" + std::to_string(b + 1);
        const int w = widths[b];
        int br1 = detail::mini_conv_bn(g, p + "_1x1", x, w / 4, 1, 1, 1, 1, Padding::Same);
        int br2 = detail::mini_conv_bn(g, p + "_3x3r", x, w / 8, 1, 1, 1, 1, Padding::Same);
        br2 = detail::mini_conv_bn(g, p + "_3x3", br2, w / 2, 3, 3, 1, 1, Padding::Same);
        int br3 = add_maxpool(g, p + "_pool", x, 3, 3, 1, 1, Padding::Same);
        br3 = detail::mini_conv_bn(g, p + "_proj", br3, w / 4, 1, 1, 1, 1, Padding::Same);
        x = add_concat(g, p + "_cat", {br1, br2, br3});
        if (b < 2) x = add_maxpool(g, "pool" + std::to_string(b + 1), x, 3, 3, 2, 2, Padding::Same);
    }
    g.backbone_size = g.size();
    return g;
}

// ---------- boundary helpers ----------

// Accepts a plain layer index, a layer name (boundary = that layer's index,
// i.e. the first unfrozen layer), or a mixed7/mixed8/mixed9 alias on the big
// backbone meaning "retrain from the block that produces this output".
template <typename T>
int resolve_freeze_boundary(const ModelGraph<T>& g, const std::string& text) {
    if (text.empty()) throw ConfigError("empty freeze boundary");
    if (text.find_first_not_of("0123456789") == std::string::npos) {
        int b = std::stoi(text);
        if (b < 0 || b > g.backbone_size)
            throw ConfigError("freeze boundary " + text + " outside [0, " + std::to_string(g.backbone_size) + "]");
        return b;
    }
    if (g.backbone_size == kInceptionV3LayerCount) {
        if (text == "mixed7") return kFreezeMixed7;
        if (text == "mixed8") return kFreezeMixed8;
        if (text == "mixed9") return kFreezeMixed9;
    }
    int idx = g.find(text);
    if (idx < 0) throw ConfigError("freeze boundary names unknown layer '" + text + "'");
    return idx;
}

// Default stage-two boundary: the last block of the small backbone, the
// mixed9 block of the big one.
template <typename T>
int default_stage2_boundary(const ModelGraph<T>& g) {
    if (g.backbone_size == kInceptionV3LayerCount) return kFreezeMixed9;
    int idx = g.find("b3_1x1_conv");
    if (idx < 0) throw ConfigError("backbone has no recognized stage-two boundary; pass one explicitly");
    return idx;
}

template <typename T>
ModelGraph<T> build_backbone(const std::string& kind, int input_hw) {
    if (kind == "inception_v3") return build_inception_v3<T>(input_hw);
    if (kind == "mini_inception" || kind == "mini") return build_mini_inception<T>(input_hw);
    throw ConfigError("unknown model kind '" + kind + "' (expected inception_v3 or mini_inception)");
}

}  // namespace statecraft
