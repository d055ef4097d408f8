#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "statecraft/common.hpp"
#include "statecraft/data.hpp"
#include "statecraft/graph.hpp"
#include "statecraft/metrics.hpp"
#include "statecraft/optimizers.hpp"
#include "statecraft/rng.hpp"

namespace statecraft {

// ---------- early stopping / plateau bookkeeping ----------

// Monitors validation loss. "Improvement" is a strict decrease beyond
// min_delta. Early stop fires after `patience` consecutive non-improving
// epochs; the learning-rate reduction arms after `plateau_patience` of them
// and fires at most once per plateau (re-armed by the next improvement).
class FitController {
  public:
    struct Decision {
        bool improved = false;
        bool reduce_lr = false;
        bool stop = false;
    };

    FitController(int patience, double min_delta, int plateau_patience)
        : patience_(patience), plateau_patience_(plateau_patience), min_delta_(min_delta) {
        if (patience < 0 || plateau_patience < 0) throw ConfigError("fit: patience values must be >= 0");
    }

    Decision observe(double val_loss) {
        ++seen_;
        Decision d;
        if (val_loss < best_ - min_delta_) {
            best_ = val_loss;
            best_epoch_ = seen_;
            wait_ = 0;
            plateau_wait_ = 0;
            reduced_this_plateau_ = false;
            d.improved = true;
            return d;
        }
        ++wait_;
        ++plateau_wait_;
        if (plateau_patience_ > 0 && !reduced_this_plateau_ && plateau_wait_ >= plateau_patience_) {
            d.reduce_lr = true;
            reduced_this_plateau_ = true;
        }
        if (patience_ > 0 && wait_ >= patience_) d.stop = true;
        return d;
    }

    double best() const { return best_; }
    int best_epoch() const { return best_epoch_; }  // 1-based observation index

  private:
    int patience_, plateau_patience_;
    double min_delta_;
    double best_ = std::numeric_limits<double>::infinity();
    int best_epoch_ = 0, seen_ = 0, wait_ = 0, plateau_wait_ = 0;
    bool reduced_this_plateau_ = false;
};

// ---------- checkpoints ----------

struct OptimizerState {
    std::int64_t steps = 0;
    double lr = 0;
    std::vector<Tensor<float>> a, b;
};

// In-memory snapshot. Weights cover every parameter including moving
// statistics, in graph order, so restore is bit-exact. RNG streams are
// derived statelessly from (seed, stage, epoch), so those three fields are
// the entire RNG state.
struct Checkpoint {
    int stage = 0;
    int epoch = 0;  // 1-based within the stage; 0 = pre-training snapshot
    double val_loss = std::numeric_limits<double>::infinity();
    double val_accuracy = 0;
    std::uint64_t seed = 0;
    std::vector<Tensor<float>> weights;
    OptimizerState opt;

    bool empty() const { return weights.empty(); }

    void capture(ModelGraph<float>& g, const Optimizer<float>* o = nullptr) {
        weights.clear();
        for (int i = 0; i < g.size(); ++i)
            for (auto& p : layer_params(g.at(i))) weights.push_back(*p.value);
        opt = OptimizerState{};
        if (o) {
            opt.steps = o->steps();
            opt.lr = o->lr();
            for (const auto& s : o->slots()) {
                opt.a.push_back(s.a);
                opt.b.push_back(s.b);
            }
        }
    }

    void restore(ModelGraph<float>& g) const {
        std::size_t at = 0;
        for (int i = 0; i < g.size(); ++i) {
            for (auto& p : layer_params(g.at(i))) {
                if (at >= weights.size()) throw StateError("checkpoint: fewer tensors than model parameters");
                if (weights[at].shape != p.value->shape)
                    throw StateError("checkpoint: shape mismatch at " + p.name);
                *p.value = weights[at++];
            }
        }
        if (at != weights.size()) throw StateError("checkpoint: more tensors than model parameters");
    }
};

// ---------- plans and results ----------

struct StagePlan {
    int stage_id = 1;
    OptimizerConfig opt = AdamConfig{};
    int max_epochs = 10;
    // Layers with index < freeze_boundary are frozen; -1 freezes the whole
    // backbone (head-only training).
    int freeze_boundary = -1;
    int patience = 5;
    double min_delta = 0;
    int plateau_patience = 3;
    double l2 = 0;
};

struct TrainOptions {
    int batch_size = 32;
    std::uint64_t seed = 0;
    bool deterministic = false;     // log seconds as 0.0
    int max_batches_per_epoch = 0;  // 0 = full pass; small values for smoke runs
    std::ostream* log = nullptr;    // JSON-lines sink
};

struct EpochRecord {
    int stage = 0;
    int epoch = 0;
    double train_loss = 0, train_acc = 0, val_loss = 0, val_acc = 0, lr = 0, seconds = 0;
};

struct StageResult {
    std::vector<EpochRecord> history;
    Checkpoint best;
    bool aborted_nan = false;
    int stopped_early_epoch = 0;  // 0 = ran to max_epochs
};

namespace detail {

inline void log_epoch(std::ostream* out, const EpochRecord& r) {
    if (!out) return;
    nlohmann::ordered_json j;
    j["stage"] = r.stage;
    j["epoch"] = r.epoch;
    j["train_loss"] = r.train_loss;
    j["train_acc"] = r.train_acc;
    j["val_loss"] = r.val_loss;
    j["val_acc"] = r.val_acc;
    j["lr"] = r.lr;
    j["seconds"] = r.seconds;
    *out << j.dump() << "\n" << std::flush;
}

}  // namespace detail

// One training stage: freeze per plan, full augmented train passes, clean
// validation after each epoch, lowest-val-loss checkpointing, plateau LR
// reduction, early stopping. The graph is left restored to the stage's best
// weights (initial weights if the stage aborted before any epoch finished).
inline StageResult run_stage(ModelGraph<float>& g, ImageLoader& loader, const std::vector<int>& train_pool,
                             const std::vector<int>& val_pool, const StagePlan& plan, const TrainOptions& options,
                             int epoch_offset = 0) {
    if (train_pool.empty()) throw ConfigError("train: empty training set");
    if (val_pool.empty()) throw ConfigError("train: empty validation set");
    if (plan.max_epochs < 0) throw ConfigError("train: max_epochs must be >= 0");
    const int classes = g.at(g.output).out_shape.back();

    if (plan.freeze_boundary < 0)
        freeze_backbone(g);
    else
        apply_freeze_boundary(g, plan.freeze_boundary);

    Optimizer<float> optim(plan.opt, plan.l2);
    optim.attach(g);
    FitController ctrl(plan.patience, plan.min_delta, plan.plateau_patience);

    StageResult result;
    Checkpoint initial;
    initial.stage = plan.stage_id;
    initial.seed = options.seed;
    initial.capture(g);

    for (int e = 1; e <= plan.max_epochs; ++e) {
        const auto t0 = std::chrono::steady_clock::now();
        const int geo = epoch_offset + e - 1;  // global epoch index for rng streams
        const auto batches = epoch_batches(train_pool, options.batch_size, options.seed, geo, /*shuffle=*/true);

        Evaluator train_ev(classes);
        bool blew_up = false;
        int step = 0;
        for (const auto& idx : batches) {
            if (options.max_batches_per_epoch > 0 && step >= options.max_batches_per_epoch) break;
            Batch b = loader.load(idx, geo, /*training=*/true);
            GradTape<float> tape;
            float loss = 0;
            try {
                forward(g, b.x, Mode::Train, tape,
                        derive_seed(options.seed, {seed_stream::kDropout, static_cast<std::uint64_t>(geo),
                                                   static_cast<std::uint64_t>(step)}));
                const Tensor<float>& probs = tape.act[static_cast<std::size_t>(g.output)];
                loss = cross_entropy_forward(probs, b.labels);
                if (!std::isfinite(loss)) throw NumericError("training loss is not finite");
                Tensor<float> dprobs = cross_entropy_backward(probs, b.labels);
                zero_grads(g);
                backward(g, tape, dprobs);
                optim.step();
                train_ev.add(tape.act[static_cast<std::size_t>(g.output)], b.labels);
            } catch (const NumericError&) {
                blew_up = true;
                break;
            }
            ++step;
        }
        if (blew_up) {
            result.aborted_nan = true;
            break;
        }

        const EvalResult train_m = train_ev.finish();
        const EvalResult val_m = evaluate_model(g, loader, val_pool, options.batch_size, classes);
        const FitController::Decision d = ctrl.observe(val_m.loss);
        if (d.reduce_lr) optim.step_lr_down();

        EpochRecord rec;
        rec.stage = plan.stage_id;
        rec.epoch = e;
        rec.train_loss = train_m.loss;
        rec.train_acc = train_m.accuracy;
        rec.val_loss = val_m.loss;
        rec.val_acc = val_m.accuracy;
        rec.lr = optim.lr();
        rec.seconds = options.deterministic
                          ? 0.0
                          : std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        result.history.push_back(rec);
        detail::log_epoch(options.log, rec);

        if (d.improved) {
            result.best.stage = plan.stage_id;
            result.best.epoch = e;
            result.best.val_loss = val_m.loss;
            result.best.val_accuracy = val_m.accuracy;
            result.best.seed = options.seed;
            result.best.capture(g, &optim);
        }
        if (d.stop) {
            result.stopped_early_epoch = e;
            break;
        }
    }

    if (!result.best.empty())
        result.best.restore(g);
    else if (result.aborted_nan) {
        initial.restore(g);
        result.best = std::move(initial);
    }
    return result;
}

struct TrainReport {
    StageResult stage1, stage2;
    int best_stage = 1;
    double final_val_loss = std::numeric_limits<double>::infinity();
    double final_val_accuracy = 0;
};

// The two-stage protocol: stage 1 trains the head over a frozen backbone;
// stage 2 resumes from stage 1's best weights with its own optimizer and a
// partially unfrozen backbone. The graph ends at the globally best
// checkpoint across both stages.
inline TrainReport run_two_stage(ModelGraph<float>& g, ImageLoader& loader, const std::vector<int>& train_pool,
                                 const std::vector<int>& val_pool, StagePlan stage1, StagePlan stage2,
                                 const TrainOptions& options) {
    stage1.stage_id = 1;
    stage2.stage_id = 2;
    if (stage1.freeze_boundary >= 0 && stage1.freeze_boundary < g.backbone_size)
        throw ConfigError("train: stage 1 must freeze the whole backbone");

    TrainReport report;
    report.stage1 = run_stage(g, loader, train_pool, val_pool, stage1, options, 0);

    if (stage2.max_epochs > 0 && !report.stage1.aborted_nan)
        report.stage2 = run_stage(g, loader, train_pool, val_pool, stage2, options,
                                  static_cast<int>(report.stage1.history.size()));

    const double l1 = report.stage1.best.val_loss;
    const double l2 = report.stage2.best.empty() ? std::numeric_limits<double>::infinity() : report.stage2.best.val_loss;
    if (l2 < l1) {
        report.best_stage = 2;
        report.final_val_loss = l2;
        report.final_val_accuracy = report.stage2.best.val_accuracy;
        report.stage2.best.restore(g);
    } else {
        report.best_stage = 1;
        report.final_val_loss = l1;
        report.final_val_accuracy = report.stage1.best.val_accuracy;
        if (!report.stage1.best.empty()) report.stage1.best.restore(g);
    }
    return report;
}

}  // namespace statecraft
