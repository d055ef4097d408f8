#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "statecraft/augment.hpp"
#include "statecraft/common.hpp"
#include "statecraft/data.hpp"
#include "statecraft/model_zoo.hpp"
#include "statecraft/optimizers.hpp"
#include "statecraft/trainer.hpp"

namespace statecraft {

// ---------- optimizer config <-> JSON ----------

inline OptimizerConfig optimizer_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("type")) throw ConfigError("optimizer config needs a \"type\" field");
    const std::string type = j["type"].get<std::string>();
    auto get = [&j](const char* key, double fallback) { return j.contains(key) ? j[key].get<double>() : fallback; };
    if (type == "adam") {
        AdamConfig c;
        c.lr = get("lr", c.lr);
        c.beta1 = get("beta1", c.beta1);
        c.beta2 = get("beta2", c.beta2);
        c.eps = get("epsilon", c.eps);
        return c;
    }
    if (type == "sgd") {
        SgdConfig c;
        c.lr = get("lr", c.lr);
        c.momentum = get("momentum", c.momentum);
        c.nesterov = j.contains("nesterov") ? j["nesterov"].get<bool>() : c.nesterov;
        return c;
    }
    if (type == "rmsprop") {
        RmspropConfig c;
        c.lr = get("lr", c.lr);
        c.rho = get("rho", c.rho);
        c.eps = get("epsilon", c.eps);
        return c;
    }
    throw ConfigError("unknown optimizer type '" + type + "' (expected adam, sgd, or rmsprop)");
}

inline nlohmann::ordered_json optimizer_to_json(const OptimizerConfig& c) {
    nlohmann::ordered_json j;
    j["type"] = optimizer_name(c);
    if (const auto* a = std::get_if<AdamConfig>(&c)) {
        j["lr"] = a->lr;
        j["beta1"] = a->beta1;
        j["beta2"] = a->beta2;
        j["epsilon"] = a->eps;
    } else if (const auto* s = std::get_if<SgdConfig>(&c)) {
        j["lr"] = s->lr;
        j["momentum"] = s->momentum;
        j["nesterov"] = s->nesterov;
    } else if (const auto* r = std::get_if<RmspropConfig>(&c)) {
        j["lr"] = r->lr;
        j["rho"] = r->rho;
        j["epsilon"] = r->eps;
    }
    return j;
}

// Builds an optimizer config by name with each algorithm's defaults.
inline OptimizerConfig optimizer_by_name(const std::string& name) {
    if (name == "adam") return AdamConfig{};
    if (name == "sgd") return SgdConfig{};
    if (name == "rmsprop") return RmspropConfig{};
    throw ConfigError("unknown optimizer '" + name + "' (expected adam, sgd, or rmsprop)");
}

// ---------- per-stage settings ----------

struct StageConfig {
    OptimizerConfig opt;
    int epochs = 10;
    int patience = 5;
    double min_delta = 0;
    int plateau_patience = 3;
    std::string freeze_boundary;  // empty = stage default; int or named block

    StageConfig() : opt(AdamConfig{}) {}
};

// ---------- the full declarative run description ----------

struct RunConfig {
    // data
    std::string data_dir;
    std::string manifest;
    std::string out_dir = "runs/latest";
    // model
    std::string model = "mini_inception";  // or "inception_v3"
    int input_hw = 64;
    int classes = 11;
    double dropout = 0.3;
    std::string backbone_weights;  // archive loaded loosely before training
    // pipeline
    bool augment_enabled = true;
    AugmentSpec augment;
    std::string zca_path;  // optional whitening model applied in preprocessing
    bool cache_images = true;
    // training
    int batch_size = 32;
    std::uint64_t seed = 0;
    bool deterministic = false;
    double l2 = 0;
    int max_batches_per_epoch = 0;
    StageConfig stage1;
    StageConfig stage2;

    RunConfig() {
        stage1.opt = AdamConfig{};
        stage1.epochs = 10;
        stage2.opt = SgdConfig{};
        stage2.epochs = 10;
    }
};

inline void augment_from_json(const nlohmann::json& j, AugmentSpec& a) {
    if (j.contains("hflip")) a.hflip = j["hflip"].get<bool>();
    if (j.contains("vflip")) a.vflip = j["vflip"].get<bool>();
    if (j.contains("shear")) a.shear = j["shear"].get<double>();
    if (j.contains("shift")) a.shift = j["shift"].get<double>();
    if (j.contains("zoom")) a.zoom = j["zoom"].get<double>();
    if (j.contains("rotation_deg")) a.rotation_deg = j["rotation_deg"].get<double>();
}

inline nlohmann::ordered_json augment_to_json(const AugmentSpec& a) {
    nlohmann::ordered_json j;
    j["hflip"] = a.hflip;
    j["vflip"] = a.vflip;
    j["shear"] = a.shear;
    j["shift"] = a.shift;
    j["zoom"] = a.zoom;
    j["rotation_deg"] = a.rotation_deg;
    return j;
}

inline void stage_from_json(const nlohmann::json& j, StageConfig& s) {
    if (j.contains("optimizer")) {
        if (j["optimizer"].is_string())
            s.opt = optimizer_by_name(j["optimizer"].get<std::string>());
        else
            s.opt = optimizer_from_json(j["optimizer"]);
    }
    if (j.contains("epochs")) s.epochs = j["epochs"].get<int>();
    if (j.contains("patience")) s.patience = j["patience"].get<int>();
    if (j.contains("min_delta")) s.min_delta = j["min_delta"].get<double>();
    if (j.contains("plateau_patience")) s.plateau_patience = j["plateau_patience"].get<int>();
    if (j.contains("freeze_boundary")) {
        if (j["freeze_boundary"].is_number_integer())
            s.freeze_boundary = std::to_string(j["freeze_boundary"].get<long long>());
        else
            s.freeze_boundary = j["freeze_boundary"].get<std::string>();
    }
}

inline nlohmann::ordered_json stage_to_json(const StageConfig& s) {
    nlohmann::ordered_json j;
    j["optimizer"] = optimizer_to_json(s.opt);
    j["epochs"] = s.epochs;
    j["patience"] = s.patience;
    j["min_delta"] = s.min_delta;
    j["plateau_patience"] = s.plateau_patience;
    if (!s.freeze_boundary.empty()) j["freeze_boundary"] = s.freeze_boundary;
    return j;
}

inline void config_from_json(const nlohmann::json& j, RunConfig& c) {
    auto str = [&j](const char* k, std::string& into) {
        if (j.contains(k)) into = j[k].get<std::string>();
    };
    str("data_dir", c.data_dir);
    str("manifest", c.manifest);
    str("out_dir", c.out_dir);
    str("model", c.model);
    str("backbone_weights", c.backbone_weights);
    str("zca_path", c.zca_path);
    if (j.contains("input_hw")) c.input_hw = j["input_hw"].get<int>();
    if (j.contains("classes")) c.classes = j["classes"].get<int>();
    if (j.contains("dropout")) c.dropout = j["dropout"].get<double>();
    if (j.contains("augment_enabled")) c.augment_enabled = j["augment_enabled"].get<bool>();
    if (j.contains("augment")) augment_from_json(j["augment"], c.augment);
    if (j.contains("cache_images")) c.cache_images = j["cache_images"].get<bool>();
    if (j.contains("batch_size")) c.batch_size = j["batch_size"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("deterministic")) c.deterministic = j["deterministic"].get<bool>();
    if (j.contains("l2")) c.l2 = j["l2"].get<double>();
    if (j.contains("max_batches_per_epoch")) c.max_batches_per_epoch = j["max_batches_per_epoch"].get<int>();
    if (j.contains("stage1")) stage_from_json(j["stage1"], c.stage1);
    if (j.contains("stage2")) stage_from_json(j["stage2"], c.stage2);
}

inline nlohmann::ordered_json config_to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["data_dir"] = c.data_dir;
    j["manifest"] = c.manifest;
    j["out_dir"] = c.out_dir;
    j["model"] = c.model;
    j["input_hw"] = c.input_hw;
    j["classes"] = c.classes;
    j["dropout"] = c.dropout;
    j["backbone_weights"] = c.backbone_weights;
    j["augment_enabled"] = c.augment_enabled;
    j["augment"] = augment_to_json(c.augment);
    j["zca_path"] = c.zca_path;
    j["cache_images"] = c.cache_images;
    j["batch_size"] = c.batch_size;
    j["seed"] = c.seed;
    j["deterministic"] = c.deterministic;
    j["l2"] = c.l2;
    j["max_batches_per_epoch"] = c.max_batches_per_epoch;
    j["stage1"] = stage_to_json(c.stage1);
    j["stage2"] = stage_to_json(c.stage2);
    return j;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("config: cannot open " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("config: bad JSON in " + path + ": " + e.what());
    }
    RunConfig c;
    config_from_json(j, c);
    return c;
}

inline void save_config(const RunConfig& c, const std::string& path) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp);
        if (!f) throw IoError("config: cannot open " + tmp.string() + " for writing");
        f << config_to_json(c).dump(2) << "\n";
        if (!f) throw IoError("config: short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw IoError("config: cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
}

// STATECRAFT_SEED overrides the configured seed when set.
inline void apply_env_overrides(RunConfig& c) {
    if (const char* s = std::getenv("STATECRAFT_SEED"); s && *s) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s, &end, 10);
        if (end == s || *end != '\0') throw ConfigError("STATECRAFT_SEED: expected an unsigned integer, got '" + std::string(s) + "'");
        c.seed = v;
    }
}

// ---------- stage plan resolution against a concrete graph ----------

template <typename T>
StagePlan make_stage_plan(const ModelGraph<T>& g, const StageConfig& s, int stage_id, double l2) {
    StagePlan p;
    p.stage_id = stage_id;
    p.opt = s.opt;
    p.max_epochs = s.epochs;
    p.patience = s.patience;
    p.min_delta = s.min_delta;
    p.plateau_patience = s.plateau_patience;
    p.l2 = l2;
    if (!s.freeze_boundary.empty())
        p.freeze_boundary = resolve_freeze_boundary(g, s.freeze_boundary);
    else
        p.freeze_boundary = stage_id <= 1 ? -1 : default_stage2_boundary(g);
    return p;
}

}  // namespace statecraft
