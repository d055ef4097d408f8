#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "statecraft/config.hpp"
#include "statecraft/runner.hpp"
#include "statecraft/trainer.hpp"

namespace statecraft {

enum class AblationAxis { BatchSize, Optimizer, FreezeBoundary, Regularizer };

inline const char* axis_name(AblationAxis a) {
    switch (a) {
        case AblationAxis::BatchSize: return "batch_size";
        case AblationAxis::Optimizer: return "optimizer";
        case AblationAxis::FreezeBoundary: return "freeze_boundary";
        default: return "regularizer";
    }
}

inline AblationAxis axis_from_name(const std::string& s) {
    if (s == "batch_size") return AblationAxis::BatchSize;
    if (s == "optimizer") return AblationAxis::Optimizer;
    if (s == "freeze_boundary") return AblationAxis::FreezeBoundary;
    if (s == "regularizer") return AblationAxis::Regularizer;
    throw ConfigError("unknown ablation axis '" + s + "' (expected batch_size, optimizer, freeze_boundary, or regularizer)");
}

struct AblationRow {
    std::string setting;
    double val_loss = std::numeric_limits<double>::infinity();
    double val_acc = 0;
    long long trainable_params = 0;
    int best_stage = 0;
    bool failed = false;
    std::vector<EpochRecord> curve;  // both stages, in training order
};

struct AblationTable {
    AblationAxis axis = AblationAxis::BatchSize;
    std::uint64_t seed = 0;
    std::vector<AblationRow> rows;
};

// Applies one axis setting onto a copy of the base config. Settings:
//   batch_size       an integer ("16")
//   optimizer        a name with that algorithm's stock parameters
//                    ("adam", "sgd", "rmsprop"); replaces stage 1's optimizer
//   freeze_boundary  stage-2 boundary, index or named block ("249", "mixed9")
//   regularizer      "none", "dropout=R", or "l2=W" (each isolates one
//                    regularizer, zeroing the other)
inline void apply_ablation_setting(RunConfig& c, AblationAxis axis, const std::string& setting) {
    switch (axis) {
        case AblationAxis::BatchSize: {
            try {
                c.batch_size = std::stoi(setting);
            } catch (const std::exception&) {
                throw ConfigError("batch_size setting must be an integer, got '" + setting + "'");
            }
            if (c.batch_size < 1) throw ConfigError("batch_size must be >= 1, got " + setting);
            break;
        }
        case AblationAxis::Optimizer:
            c.stage1.opt = optimizer_by_name(setting);
            break;
        case AblationAxis::FreezeBoundary:
            c.stage2.freeze_boundary = setting;
            break;
        case AblationAxis::Regularizer: {
            if (setting == "none") {
                c.dropout = 0;
                c.l2 = 0;
                break;
            }
            const auto eq = setting.find('=');
            if (eq == std::string::npos)
                throw ConfigError("regularizer setting must be none, dropout=R, or l2=W; got '" + setting + "'");
            const std::string key = setting.substr(0, eq);
            double value = 0;
            try {
                value = std::stod(setting.substr(eq + 1));
            } catch (const std::exception&) {
                throw ConfigError("regularizer value in '" + setting + "' is not a number");
            }
            if (key == "dropout") {
                c.dropout = value;
                c.l2 = 0;
            } else if (key == "l2") {
                c.l2 = value;
                c.dropout = 0;
            } else {
                throw ConfigError("unknown regularizer '" + key + "' (expected dropout or l2)");
            }
            break;
        }
    }
}

// Trains one model per setting under otherwise identical conditions (same
// seed, same data, same split). trainable_params is counted at the row's
// stage-2 freeze boundary. A row whose training aborts on NaN is marked
// failed; the table is still complete.
inline AblationTable run_ablation(const RunConfig& base, AblationAxis axis, const std::vector<std::string>& settings,
                                  std::ostream* progress = nullptr) {
    if (settings.size() < 2) throw ConfigError("ablation: need at least 2 settings");
    AblationTable table;
    table.axis = axis;
    table.seed = base.seed;

    for (const auto& setting : settings) {
        RunConfig c = base;
        apply_ablation_setting(c, axis, setting);

        AblationRow row;
        row.setting = setting;
        if (progress) *progress << "ablate " << axis_name(axis) << "=" << setting << "\n" << std::flush;

        RunContext ctx = prepare_run(c);
        ModelGraph<float> g = build_run_model(c);
        const StagePlan plan1 = make_stage_plan(g, c.stage1, 1, c.l2);
        const StagePlan plan2 = make_stage_plan(g, c.stage2, 2, c.l2);

        apply_freeze_boundary(g, plan2.freeze_boundary < 0 ? g.backbone_size : plan2.freeze_boundary);
        row.trainable_params = static_cast<long long>(trainable_param_count(g));

        const TrainOptions options = make_train_options(c, nullptr);
        const TrainReport report =
            run_two_stage(g, *ctx.loader, ctx.split.train, ctx.split.val, plan1, plan2, options);

        row.failed = report.stage1.aborted_nan || report.stage2.aborted_nan;
        row.best_stage = report.best_stage;
        row.val_loss = report.final_val_loss;
        row.val_acc = report.final_val_accuracy;
        row.curve = report.stage1.history;
        row.curve.insert(row.curve.end(), report.stage2.history.begin(), report.stage2.history.end());
        table.rows.push_back(std::move(row));
    }
    return table;
}

// ---------- report files ----------

namespace detail {

inline std::string sanitize_filename(const std::string& s) {
    std::string out;
    for (char ch : s) out.push_back(std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_');
    return out.empty() ? "row" : out;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp);
        if (!f) throw IoError("report: cannot open " + tmp.string() + " for writing");
        f << text;
        if (!f) throw IoError("report: short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw IoError("report: cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
}

inline std::string format_double(double v) {
    if (std::isinf(v)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline std::string curve_csv(const std::vector<EpochRecord>& curve) {
    std::string text = "stage,epoch,train_loss,train_acc,val_loss,val_acc,lr,seconds\n";
    for (const auto& r : curve) {
        text += std::to_string(r.stage) + "," + std::to_string(r.epoch) + "," + format_double(r.train_loss) + "," +
                format_double(r.train_acc) + "," + format_double(r.val_loss) + "," + format_double(r.val_acc) + "," +
                format_double(r.lr) + "," + format_double(r.seconds) + "\n";
    }
    return text;
}

inline nlohmann::ordered_json curve_json(const std::vector<EpochRecord>& curve) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : curve) {
        nlohmann::ordered_json e;
        e["stage"] = r.stage;
        e["epoch"] = r.epoch;
        e["train_loss"] = r.train_loss;
        e["train_acc"] = r.train_acc;
        e["val_loss"] = r.val_loss;
        e["val_acc"] = r.val_acc;
        e["lr"] = r.lr;
        e["seconds"] = r.seconds;
        arr.push_back(std::move(e));
    }
    return arr;
}

inline std::vector<EpochRecord> curve_from_json(const nlohmann::json& arr) {
    std::vector<EpochRecord> out;
    for (const auto& e : arr) {
        EpochRecord r;
        r.stage = e["stage"].get<int>();
        r.epoch = e["epoch"].get<int>();
        r.train_loss = e["train_loss"].get<double>();
        r.train_acc = e["train_acc"].get<double>();
        r.val_loss = e["val_loss"].get<double>();
        r.val_acc = e["val_acc"].get<double>();
        r.lr = e["lr"].get<double>();
        r.seconds = e["seconds"].get<double>();
        out.push_back(r);
    }
    return out;
}

}  // namespace detail

// Writes report.csv, report.json, and curves/<setting>.csv under out_dir.
// CSV columns: axis,setting,val_loss,val_acc,trainable_params,best_stage,failed.
inline void emit_ablation(const AblationTable& table, const std::string& out_dir) {
    std::string csv = "axis,setting,val_loss,val_acc,trainable_params,best_stage,failed\n";
    for (const auto& r : table.rows)
        csv += std::string(axis_name(table.axis)) + "," + r.setting + "," + detail::format_double(r.val_loss) + "," +
               detail::format_double(r.val_acc) + "," + std::to_string(r.trainable_params) + "," +
               std::to_string(r.best_stage) + "," + (r.failed ? "true" : "false") + "\n";
    detail::write_text_file(out_dir + "/report.csv", csv);

    nlohmann::ordered_json j;
    j["schema"] = "statecraft-ablation/1";
    j["axis"] = axis_name(table.axis);
    j["seed"] = table.seed;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
        nlohmann::ordered_json row;
        row["setting"] = r.setting;
        row["val_loss"] = std::isinf(r.val_loss) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.val_loss);
        row["val_acc"] = r.val_acc;
        row["trainable_params"] = r.trainable_params;
        row["best_stage"] = r.best_stage;
        row["failed"] = r.failed;
        row["curve"] = detail::curve_json(r.curve);
        j["rows"].push_back(std::move(row));
    }
    detail::write_text_file(out_dir + "/report.json", j.dump(2) + "\n");

    for (const auto& r : table.rows)
        detail::write_text_file(out_dir + "/curves/" + detail::sanitize_filename(r.setting) + ".csv",
                                detail::curve_csv(r.curve));
}

inline AblationTable read_ablation_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("report: cannot open " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("report: bad JSON in " + path + ": " + e.what());
    }
    if (!j.contains("schema") || j["schema"].get<std::string>() != "statecraft-ablation/1")
        throw FormatError("report: " + path + " is not a statecraft-ablation/1 file");
    AblationTable t;
    t.axis = axis_from_name(j["axis"].get<std::string>());
    t.seed = j["seed"].get<std::uint64_t>();
    for (const auto& e : j["rows"]) {
        AblationRow r;
        r.setting = e["setting"].get<std::string>();
        r.val_loss = e["val_loss"].is_null() ? std::numeric_limits<double>::infinity() : e["val_loss"].get<double>();
        r.val_acc = e["val_acc"].get<double>();
        r.trainable_params = e["trainable_params"].get<long long>();
        r.best_stage = e["best_stage"].get<int>();
        r.failed = e["failed"].get<bool>();
        r.curve = detail::curve_from_json(e["curve"]);
        t.rows.push_back(std::move(r));
    }
    return t;
}

// Writes a training run's report.csv (the per-epoch curve) and report.json.
inline void emit_train_report(const TrainReport& report, const std::string& out_dir) {
    std::vector<EpochRecord> curve = report.stage1.history;
    curve.insert(curve.end(), report.stage2.history.begin(), report.stage2.history.end());
    detail::write_text_file(out_dir + "/report.csv", detail::curve_csv(curve));

    nlohmann::ordered_json j;
    j["schema"] = "statecraft-train/1";
    j["best_stage"] = report.best_stage;
    j["final_val_loss"] =
        std::isinf(report.final_val_loss) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(report.final_val_loss);
    j["final_val_accuracy"] = report.final_val_accuracy;
    j["stage1_aborted"] = report.stage1.aborted_nan;
    j["stage2_aborted"] = report.stage2.aborted_nan;
    j["history"] = detail::curve_json(curve);
    detail::write_text_file(out_dir + "/report.json", j.dump(2) + "\n");
}

}  // namespace statecraft
