// statecraft: train, evaluate, and dissect small image-state classifiers
// built on the bundled header-only engine.
//
// Exit codes: 0 success, 2 bad usage/config, 3 data or weights problems,
// 4 training aborted (non-finite loss).

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include <statecraft/statecraft.hpp>

namespace sc = statecraft;

namespace {

std::uint64_t env_seed_override(std::uint64_t fallback) {
    const char* s = std::getenv("STATECRAFT_SEED");
    if (!s || !*s) return fallback;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0')
        throw sc::ConfigError("STATECRAFT_SEED: expected an unsigned integer, got '" + std::string(s) + "'");
    return v;
}

// ---------- shared flag plumbing for config-driven commands ----------

struct ConfigFlags {
    std::string config_path;
    std::string data_dir, manifest, out_dir, model, backbone, zca_path, freeze_boundary;
    int input_hw = 0, classes = 0, batch_size = 0, epochs1 = -1, epochs2 = -1, patience = -1, max_batches = -1;
    double dropout = -1, l2 = -1, lr1 = 0, lr2 = 0;
    std::string optimizer1, optimizer2;
    std::uint64_t seed = 0;
    bool from_scratch = false, no_augment = false, deterministic = false, no_cache = false;

    CLI::Option *o_data = nullptr, *o_manifest = nullptr, *o_out = nullptr, *o_model = nullptr, *o_backbone = nullptr,
                *o_zca = nullptr, *o_boundary = nullptr, *o_hw = nullptr, *o_classes = nullptr, *o_batch = nullptr,
                *o_e1 = nullptr, *o_e2 = nullptr, *o_patience = nullptr, *o_maxb = nullptr, *o_dropout = nullptr,
                *o_l2 = nullptr, *o_lr1 = nullptr, *o_lr2 = nullptr, *o_opt1 = nullptr, *o_opt2 = nullptr,
                *o_seed = nullptr;

    void add_to(CLI::App* cmd, bool training_knobs) {
        cmd->add_option("--config", config_path, "JSON run config; flags override its fields");
        o_data = cmd->add_option("--data", data_dir, "dataset root (one directory per class)");
        o_manifest = cmd->add_option("--manifest", manifest, "split manifest path");
        o_out = cmd->add_option("--out", out_dir, "output directory");
        o_model = cmd->add_option("--model", model, "inception_v3 or mini_inception");
        o_hw = cmd->add_option("--input-hw", input_hw, "model input height/width");
        o_classes = cmd->add_option("--classes", classes, "number of classes");
        o_seed = cmd->add_option("--seed", seed, "run seed (STATECRAFT_SEED env overrides)");
        o_zca = cmd->add_option("--zca", zca_path, "whitening model archive applied in preprocessing");
        o_batch = cmd->add_option("--batch-size", batch_size, "training/eval batch size");
        if (!training_knobs) return;
        o_backbone = cmd->add_option("--backbone", backbone, "pretrained backbone archive (loose load)");
        cmd->add_flag("--from-scratch", from_scratch, "ignore configured backbone weights");
        o_dropout = cmd->add_option("--dropout", dropout, "head dropout rate");
        o_l2 = cmd->add_option("--l2", l2, "L2 penalty on trainable parameters");
        o_e1 = cmd->add_option("--epochs1", epochs1, "stage-1 max epochs");
        o_e2 = cmd->add_option("--epochs2", epochs2, "stage-2 max epochs (0 skips stage 2)");
        o_lr1 = cmd->add_option("--lr1", lr1, "stage-1 learning rate");
        o_lr2 = cmd->add_option("--lr2", lr2, "stage-2 learning rate");
        o_opt1 = cmd->add_option("--optimizer1", optimizer1, "stage-1 optimizer (adam|sgd|rmsprop)");
        o_opt2 = cmd->add_option("--optimizer2", optimizer2, "stage-2 optimizer (adam|sgd|rmsprop)");
        o_boundary = cmd->add_option("--freeze-boundary", freeze_boundary,
                                     "stage-2 boundary: index, layer name, or mixed7/mixed8/mixed9");
        o_patience = cmd->add_option("--patience", patience, "early-stop patience for both stages");
        o_maxb = cmd->add_option("--max-batches", max_batches, "cap train batches per epoch (smoke runs)");
        cmd->add_flag("--no-augment", no_augment, "disable training augmentation");
        cmd->add_flag("--deterministic", deterministic, "log timing as 0.0 so reruns match byte-for-byte");
        cmd->add_flag("--no-cache", no_cache, "do not cache decoded images in memory");
    }

    sc::RunConfig resolve() const {
        sc::RunConfig c;
        if (!config_path.empty()) c = sc::load_config(config_path);
        auto set_str = [](CLI::Option* o, const std::string& v, std::string& into) {
            if (o && o->count()) into = v;
        };
        set_str(o_data, data_dir, c.data_dir);
        set_str(o_manifest, manifest, c.manifest);
        set_str(o_out, out_dir, c.out_dir);
        set_str(o_model, model, c.model);
        set_str(o_backbone, backbone, c.backbone_weights);
        set_str(o_zca, zca_path, c.zca_path);
        set_str(o_boundary, freeze_boundary, c.stage2.freeze_boundary);
        if (o_hw && o_hw->count()) c.input_hw = input_hw;
        if (o_classes && o_classes->count()) c.classes = classes;
        if (o_batch && o_batch->count()) c.batch_size = batch_size;
        if (o_seed && o_seed->count()) c.seed = seed;
        if (o_dropout && o_dropout->count()) c.dropout = dropout;
        if (o_l2 && o_l2->count()) c.l2 = l2;
        if (o_e1 && o_e1->count()) c.stage1.epochs = epochs1;
        if (o_e2 && o_e2->count()) c.stage2.epochs = epochs2;
        if (o_opt1 && o_opt1->count()) c.stage1.opt = sc::optimizer_by_name(optimizer1);
        if (o_opt2 && o_opt2->count()) c.stage2.opt = sc::optimizer_by_name(optimizer2);
        if (o_lr1 && o_lr1->count()) std::visit([this](auto& v) { v.lr = lr1; }, c.stage1.opt);
        if (o_lr2 && o_lr2->count()) std::visit([this](auto& v) { v.lr = lr2; }, c.stage2.opt);
        if (o_patience && o_patience->count()) {
            c.stage1.patience = patience;
            c.stage2.patience = patience;
        }
        if (o_maxb && o_maxb->count()) c.max_batches_per_epoch = max_batches;
        if (from_scratch) c.backbone_weights.clear();
        if (no_augment) c.augment_enabled = false;
        if (deterministic) c.deterministic = true;
        if (no_cache) c.cache_images = false;
        c.seed = env_seed_override(c.seed);
        return c;
    }
};

void print_counts(const sc::Dataset& ds, const sc::SplitResult& split) {
    std::vector<std::array<long long, 3>> per(static_cast<std::size_t>(ds.classes()), {0, 0, 0});
    for (std::size_t i = 0; i < ds.items.size(); ++i)
        ++per[static_cast<std::size_t>(ds.items[i].label)][static_cast<std::size_t>(split.assign[i])];
    std::size_t width = 5;
    for (const auto& n : ds.class_names) width = std::max(width, n.size());
    std::printf("%-*s %7s %7s %7s\n", static_cast<int>(width), "class", "train", "val", "test");
    for (int c = 0; c < ds.classes(); ++c) {
        const auto& row = per[static_cast<std::size_t>(c)];
        std::printf("%-*s %7lld %7lld %7lld\n", static_cast<int>(width), ds.class_names[static_cast<std::size_t>(c)].c_str(),
                    row[0], row[1], row[2]);
    }
    std::printf("%-*s %7zu %7zu %7zu\n", static_cast<int>(width), "total", split.train.size(), split.val.size(),
                split.test.size());
}

// ---------- split ----------

struct SplitArgs {
    std::string data_dir, out_path;
    double train = 0.68, val = 0.15, test = 0.17;
    std::uint64_t seed = 0;
};

int cmd_split(const SplitArgs& a) {
    const std::uint64_t seed = env_seed_override(a.seed);
    const sc::Dataset ds = sc::scan_directory(a.data_dir);
    const sc::SplitResult split = sc::stratified_split(ds, {a.train, a.val, a.test}, seed);
    const std::string out = a.out_path.empty() ? a.data_dir + "/split_manifest.json" : a.out_path;
    sc::write_split_manifest(out, ds, split);
    print_counts(ds, split);
    std::printf("manifest: %s\n", out.c_str());
    return 0;
}

// ---------- params ----------

struct ParamsArgs {
    std::string model = "inception_v3", boundary = "0";
    int classes = 11, input_hw = 0;
};

int cmd_params(const ParamsArgs& a) {
    const int hw = a.input_hw > 0 ? a.input_hw : (a.model == "inception_v3" ? 299 : 64);
    sc::ModelGraph<float> g = sc::build_backbone<float>(a.model, hw);
    sc::attach_head(g, a.classes);
    const int boundary = a.boundary == "all" ? g.backbone_size : sc::resolve_freeze_boundary(g, a.boundary);
    sc::apply_freeze_boundary(g, boundary);
    const std::size_t total = sc::total_param_count(g);
    const std::size_t trainable = sc::trainable_param_count(g);
    std::printf("model: %s  layers: %d (backbone %d)\n", a.model.c_str(), g.size(), g.backbone_size);
    std::printf("freeze boundary: %d (layers below it frozen)\n", boundary);
    std::printf("total params:         %zu\n", total);
    std::printf("trainable params:     %zu\n", trainable);
    std::printf("non-trainable params: %zu\n", total - trainable);
    return 0;
}

// ---------- pretrain ----------

struct PretrainArgs {
    std::string data_dir, out_path, log_path, optimizer = "adam";
    bool synthetic = false;
    int synthetic_per_class = 50, synthetic_hw = 64, synthetic_classes = 11;
    int epochs = 8, batch_size = 32, input_hw = 64, max_batches = 0, patience = 5;
    double lr = 1e-3, val_fraction = 0.15;
    std::uint64_t seed = 0;
    bool deterministic = false;
};

int cmd_pretrain(const PretrainArgs& a) {
    const std::uint64_t seed = env_seed_override(a.seed);
    namespace fs = std::filesystem;
    if (a.synthetic) {
        sc::SyntheticSpec spec;
        spec.classes = a.synthetic_classes;
        spec.per_class = a.synthetic_per_class;
        spec.hw = a.synthetic_hw;
        spec.seed = seed;
        std::printf("generating synthetic dataset (%d classes x %d) in %s\n", spec.classes, spec.per_class,
                    a.data_dir.c_str());
        sc::generate_synthetic_dataset(a.data_dir, spec);
    } else if (!fs::is_directory(a.data_dir)) {
        throw sc::ConfigError("pretrain: " + a.data_dir + " does not exist (pass --synthetic to generate data)");
    }

    const sc::Dataset ds = sc::scan_directory(a.data_dir);
    const sc::SplitResult split = sc::stratified_split(ds, {1.0 - a.val_fraction, a.val_fraction, 0.0}, seed);

    sc::ModelGraph<float> g = sc::build_mini_inception<float>(a.input_hw);
    sc::attach_gap_classifier(g, ds.classes());
    sc::init_params(g, sc::derive_seed(seed, {sc::seed_stream::kInit}));

    sc::ImageLoader loader(ds, a.input_hw, a.input_hw, seed, nullptr, sc::AugmentSpec{}, /*cache=*/true);

    sc::StagePlan plan;
    plan.stage_id = 0;
    plan.freeze_boundary = 0;  // everything trainable
    plan.max_epochs = a.epochs;
    plan.patience = a.patience;
    auto opt = sc::optimizer_by_name(a.optimizer);
    std::visit([&a](auto& v) { v.lr = a.lr; }, opt);
    plan.opt = opt;

    sc::TrainOptions options;
    options.batch_size = a.batch_size;
    options.seed = seed;
    options.deterministic = a.deterministic;
    options.max_batches_per_epoch = a.max_batches;
    std::ofstream log;
    if (!a.log_path.empty()) {
        log.open(a.log_path);
        if (!log) throw sc::IoError("pretrain: cannot open log " + a.log_path);
        options.log = &log;
    }

    const sc::StageResult result = sc::run_stage(g, loader, split.train, split.val, plan, options);
    sc::save_weights(g, a.out_path, /*backbone_only=*/true);
    if (result.aborted_nan) {
        std::fprintf(stderr, "pretraining aborted on non-finite loss; last finite weights saved to %s\n",
                     a.out_path.c_str());
        return 4;
    }
    if (!result.history.empty())
        std::printf("pretrain best: epoch %d val_loss %.4f val_acc %.4f\n", result.best.epoch, result.best.val_loss,
                    result.best.val_accuracy);
    std::printf("backbone archive: %s\n", a.out_path.c_str());
    return 0;
}

// ---------- train ----------

int cmd_train(const ConfigFlags& flags) {
    sc::RunConfig c = flags.resolve();
    sc::RunContext ctx = sc::prepare_run(c);
    sc::ModelGraph<float> g = sc::build_run_model(c);
    const sc::StagePlan plan1 = sc::make_stage_plan(g, c.stage1, 1, c.l2);
    sc::StagePlan plan2 = sc::make_stage_plan(g, c.stage2, 2, c.l2);
    c.stage2.freeze_boundary = std::to_string(plan2.freeze_boundary);
    sc::save_config(c, c.out_dir + "/resolved_config.json");

    std::ofstream log(c.out_dir + "/train_log.jsonl");
    if (!log) throw sc::IoError("train: cannot open " + c.out_dir + "/train_log.jsonl");
    sc::TrainOptions options = sc::make_train_options(c, &log);

    const sc::TrainReport report =
        sc::run_two_stage(g, *ctx.loader, ctx.split.train, ctx.split.val, plan1, plan2, options);

    sc::emit_train_report(report, c.out_dir);
    sc::save_weights(g, c.out_dir + "/weights.bin");
    std::printf("artifacts: %s/{resolved_config.json, train_log.jsonl, report.csv, report.json, weights.bin}\n",
                c.out_dir.c_str());
    if (report.stage1.aborted_nan || report.stage2.aborted_nan) {
        std::fprintf(stderr, "training aborted on non-finite loss; best finite weights were saved\n");
        return 4;
    }
    std::printf("best: stage %d val_loss %.4f val_acc %.4f\n", report.best_stage, report.final_val_loss,
                report.final_val_accuracy);
    return 0;
}

// ---------- evaluate ----------

int cmd_evaluate(const ConfigFlags& flags, const std::string& weights, const std::string& subset) {
    sc::RunConfig c = flags.resolve();
    const sc::Split which = sc::split_from_name(subset);
    sc::RunContext ctx = sc::prepare_run(c);
    sc::ModelGraph<float> g = sc::build_backbone<float>(c.model, c.input_hw);
    sc::attach_head(g, c.classes, c.dropout);
    sc::load_weights(g, weights, /*strict=*/true);

    const std::vector<int>& pool = ctx.split.of(which);
    if (pool.empty()) throw sc::ConfigError("evaluate: subset '" + subset + "' is empty");
    const sc::EvalResult r = sc::evaluate_model(g, *ctx.loader, pool, c.batch_size, c.classes);

    std::printf("subset: %s  samples: %lld\n", subset.c_str(), r.count);
    std::printf("loss: %.6f\naccuracy: %.6f\n", r.loss, r.accuracy);
    std::size_t width = 5;
    for (const auto& n : ctx.dataset.class_names) width = std::max(width, n.size());
    std::printf("%-*s %10s %10s %8s\n", static_cast<int>(width), "class", "precision", "recall", "support");
    for (int k = 0; k < c.classes; ++k) {
        long long support = 0;
        for (long long v : r.confusion[static_cast<std::size_t>(k)]) support += v;
        std::printf("%-*s %10.4f %10.4f %8lld\n", static_cast<int>(width),
                    ctx.dataset.class_names[static_cast<std::size_t>(k)].c_str(), r.precision[static_cast<std::size_t>(k)],
                    r.recall[static_cast<std::size_t>(k)], support);
    }

    std::string csv = "true_class";
    for (const auto& n : ctx.dataset.class_names) csv += "," + n;
    csv += "\n";
    for (int i = 0; i < c.classes; ++i) {
        csv += ctx.dataset.class_names[static_cast<std::size_t>(i)];
        for (int j = 0; j < c.classes; ++j)
            csv += "," + std::to_string(r.confusion[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        csv += "\n";
    }
    const std::string out = c.out_dir + "/confusion_" + subset + ".csv";
    sc::detail::write_text_file(out, csv);
    std::printf("confusion: %s\n", out.c_str());
    return 0;
}

// ---------- predict ----------

int cmd_predict(const ConfigFlags& flags, const std::string& weights, const std::string& image_path, int topk) {
    sc::RunConfig c = flags.resolve();
    sc::ModelGraph<float> g = sc::build_backbone<float>(c.model, c.input_hw);
    sc::attach_head(g, c.classes, c.dropout);
    sc::load_weights(g, weights, /*strict=*/true);

    std::vector<std::string> names;
    if (!c.data_dir.empty())
        names = sc::scan_directory(c.data_dir).class_names;
    else
        for (int k = 0; k < c.classes; ++k) names.push_back("class_" + std::to_string(k));
    if (static_cast<int>(names.size()) != c.classes)
        throw sc::ConfigError("predict: dataset has " + std::to_string(names.size()) + " classes, config says " +
                              std::to_string(c.classes));

    std::optional<sc::ZcaModel> zca;
    if (!c.zca_path.empty()) zca = sc::load_zca(c.zca_path);
    const sc::Tensor<float> img = sc::preprocess(sc::load_image(image_path), c.input_hw, c.input_hw,
                                                 zca ? &*zca : nullptr);
    sc::Tensor<float> x({1, c.input_hw, c.input_hw, 3});
    x.data = img.data;

    sc::GradTape<float> tape;
    sc::forward(g, x, sc::Mode::Infer, tape);
    const sc::Tensor<float>& probs = tape.act[static_cast<std::size_t>(g.output)];

    std::vector<int> order(static_cast<std::size_t>(c.classes));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&probs](int l, int r) {
        const float pl = probs.data[static_cast<std::size_t>(l)], pr = probs.data[static_cast<std::size_t>(r)];
        return pl != pr ? pl > pr : l < r;
    });
    const int n = topk > 0 ? std::min(topk, c.classes) : c.classes;
    for (int i = 0; i < n; ++i)
        std::printf("%-24s %.6f\n", names[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])].c_str(),
                    probs.data[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
    return 0;
}

// ---------- ablate ----------

int cmd_ablate(const ConfigFlags& flags, const std::string& axis_text, const std::vector<std::string>& settings) {
    sc::RunConfig c = flags.resolve();
    const sc::AblationAxis axis = sc::axis_from_name(axis_text);
    const sc::AblationTable table = sc::run_ablation(c, axis, settings, &std::cout);
    sc::emit_ablation(table, c.out_dir);
    int failed = 0;
    for (const auto& r : table.rows) failed += r.failed ? 1 : 0;
    std::printf("ablation: %zu rows (%d failed) -> %s/{report.csv, report.json, curves/}\n", table.rows.size(), failed,
                c.out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"statecraft: two-stage transfer-learning trainer for image state classification"};
    app.require_subcommand(1);

    SplitArgs split_args;
    CLI::App* split_cmd = app.add_subcommand("split", "write a stratified train/val/test manifest");
    split_cmd->add_option("--data", split_args.data_dir, "dataset root")->required();
    split_cmd->add_option("--out", split_args.out_path, "manifest path (default <data>/split_manifest.json)");
    split_cmd->add_option("--train", split_args.train, "train fraction");
    split_cmd->add_option("--val", split_args.val, "validation fraction");
    split_cmd->add_option("--test", split_args.test, "test fraction");
    split_cmd->add_option("--seed", split_args.seed, "shuffle seed");

    ParamsArgs params_args;
    CLI::App* params_cmd = app.add_subcommand("params", "print parameter counts at a freeze boundary");
    params_cmd->add_option("--model", params_args.model, "inception_v3 or mini_inception");
    params_cmd->add_option("--boundary", params_args.boundary,
                           "freeze boundary: index, layer name, mixed7/mixed8/mixed9, or 'all'");
    params_cmd->add_option("--classes", params_args.classes, "head classes");
    params_cmd->add_option("--input-hw", params_args.input_hw, "input size (counts do not depend on it)");

    PretrainArgs pre_args;
    CLI::App* pre_cmd = app.add_subcommand("pretrain", "train a mini_inception backbone from scratch");
    pre_cmd->add_option("--data", pre_args.data_dir, "dataset root")->required();
    pre_cmd->add_option("--out", pre_args.out_path, "backbone archive path")->required();
    pre_cmd->add_flag("--synthetic", pre_args.synthetic, "generate the synthetic benchmark into --data first");
    pre_cmd->add_option("--synthetic-classes", pre_args.synthetic_classes, "synthetic class count");
    pre_cmd->add_option("--synthetic-per-class", pre_args.synthetic_per_class, "synthetic images per class");
    pre_cmd->add_option("--synthetic-hw", pre_args.synthetic_hw, "synthetic image size");
    pre_cmd->add_option("--epochs", pre_args.epochs, "max epochs");
    pre_cmd->add_option("--batch-size", pre_args.batch_size, "batch size");
    pre_cmd->add_option("--input-hw", pre_args.input_hw, "model input size");
    pre_cmd->add_option("--lr", pre_args.lr, "learning rate");
    pre_cmd->add_option("--optimizer", pre_args.optimizer, "adam|sgd|rmsprop");
    pre_cmd->add_option("--val-fraction", pre_args.val_fraction, "validation holdout fraction");
    pre_cmd->add_option("--patience", pre_args.patience, "early-stop patience");
    pre_cmd->add_option("--seed", pre_args.seed, "run seed");
    pre_cmd->add_option("--max-batches", pre_args.max_batches, "cap train batches per epoch");
    pre_cmd->add_option("--log", pre_args.log_path, "JSONL epoch log path");
    pre_cmd->add_flag("--deterministic", pre_args.deterministic, "log timing as 0.0");

    ConfigFlags train_flags;
    CLI::App* train_cmd = app.add_subcommand("train", "run the two-stage fine-tuning protocol");
    train_flags.add_to(train_cmd, /*training_knobs=*/true);

    ConfigFlags eval_flags;
    std::string eval_weights, eval_subset = "test";
    CLI::App* eval_cmd = app.add_subcommand("evaluate", "evaluate a weights archive on a split");
    eval_flags.add_to(eval_cmd, /*training_knobs=*/false);
    eval_cmd->add_option("--weights", eval_weights, "model weights archive")->required();
    eval_cmd->add_option("--subset", eval_subset, "train, val, or test");

    ConfigFlags predict_flags;
    std::string predict_weights, predict_image;
    int predict_topk = 0;
    CLI::App* predict_cmd = app.add_subcommand("predict", "rank class probabilities for one image");
    predict_flags.add_to(predict_cmd, /*training_knobs=*/false);
    predict_cmd->add_option("--weights", predict_weights, "model weights archive")->required();
    predict_cmd->add_option("--image", predict_image, "image path (PNG or JPEG)")->required();
    predict_cmd->add_option("--topk", predict_topk, "print only the top K classes");

    ConfigFlags ablate_flags;
    std::string ablate_axis;
    std::vector<std::string> ablate_settings;
    CLI::App* ablate_cmd = app.add_subcommand("ablate", "train one model per setting along one axis");
    ablate_flags.add_to(ablate_cmd, /*training_knobs=*/true);
    ablate_cmd->add_option("--axis", ablate_axis, "batch_size, optimizer, freeze_boundary, or regularizer")->required();
    ablate_cmd->add_option("--setting", ablate_settings, "axis setting (repeat for each row)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (split_cmd->parsed()) return cmd_split(split_args);
        if (params_cmd->parsed()) return cmd_params(params_args);
        if (pre_cmd->parsed()) return cmd_pretrain(pre_args);
        if (train_cmd->parsed()) return cmd_train(train_flags);
        if (eval_cmd->parsed()) return cmd_evaluate(eval_flags, eval_weights, eval_subset);
        if (predict_cmd->parsed()) return cmd_predict(predict_flags, predict_weights, predict_image, predict_topk);
        if (ablate_cmd->parsed()) return cmd_ablate(ablate_flags, ablate_axis, ablate_settings);
    } catch (const sc::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const sc::DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const sc::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const sc::FormatError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const sc::ShapeError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const sc::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
    return 0;
}
