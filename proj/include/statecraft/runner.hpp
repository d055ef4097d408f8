#pragma once

#include <memory>
#include <optional>
#include <string>

#include "statecraft/config.hpp"
#include "statecraft/data.hpp"
#include "statecraft/model_zoo.hpp"
#include "statecraft/preprocess.hpp"
#include "statecraft/trainer.hpp"
#include "statecraft/weights_io.hpp"

namespace statecraft {

// Builds the configured model: backbone + head, seeded init, then an
// optional loose load of pretrained backbone weights (head entries absent
// from the archive stay at their initialization).
inline ModelGraph<float> build_run_model(const RunConfig& c) {
    ModelGraph<float> g = build_backbone<float>(c.model, c.input_hw);
    attach_head(g, c.classes, c.dropout);
    init_params(g, derive_seed(c.seed, {seed_stream::kInit}));
    if (!c.backbone_weights.empty()) load_weights(g, c.backbone_weights, /*strict=*/false);
    return g;
}

// Everything a training or evaluation run needs, wired from one config.
struct RunContext {
    Dataset dataset;
    SplitResult split;
    std::optional<ZcaModel> zca;
    std::unique_ptr<ImageLoader> loader;
};

inline RunContext prepare_run(const RunConfig& c, bool need_manifest = true) {
    if (c.data_dir.empty()) throw ConfigError("run: data_dir is not set");
    RunContext ctx;
    ctx.dataset = scan_directory(c.data_dir);
    if (ctx.dataset.classes() != c.classes)
        throw ConfigError("run: config says " + std::to_string(c.classes) + " classes, dataset has " +
                          std::to_string(ctx.dataset.classes()));
    if (need_manifest) {
        if (c.manifest.empty()) throw ConfigError("run: manifest path is not set");
        ctx.split = read_split_manifest(c.manifest, ctx.dataset);
    }
    if (!c.zca_path.empty()) ctx.zca = load_zca(c.zca_path);
    ctx.loader = std::make_unique<ImageLoader>(
        ctx.dataset, c.input_hw, c.input_hw, c.seed, ctx.zca ? &*ctx.zca : nullptr,
        c.augment_enabled ? std::optional<AugmentSpec>(c.augment) : std::nullopt, c.cache_images);
    return ctx;
}

inline TrainOptions make_train_options(const RunConfig& c, std::ostream* log) {
    TrainOptions o;
    o.batch_size = c.batch_size;
    o.seed = c.seed;
    o.deterministic = c.deterministic;
    o.max_batches_per_epoch = c.max_batches_per_epoch;
    o.log = log;
    return o;
}

}  // namespace statecraft
