#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "statecraft/common.hpp"
#include "statecraft/data.hpp"
#include "statecraft/graph.hpp"
#include "statecraft/ops.hpp"
#include "statecraft/tensor.hpp"

namespace statecraft {

// Ties go to the lowest class index.
template <typename T>
int argmax_index(const T* row, int k) {
    int best = 0;
    for (int j = 1; j < k; ++j)
        if (row[j] > row[best]) best = j;
    return best;
}

struct EvalResult {
    double loss = 0;
    double accuracy = 0;
    long long count = 0;
    std::vector<std::vector<long long>> confusion;  // [true class][predicted class]
    std::vector<double> precision, recall;
};

// Accumulates batches of softmax outputs. Loss is the per-sample clamped
// negative log-likelihood averaged over everything added, matching the
// training objective; accumulation is in double and order-deterministic.
class Evaluator {
  public:
    explicit Evaluator(int classes) : classes_(classes) {
        if (classes < 2) throw ConfigError("evaluator: need at least 2 classes");
        confusion_.assign(static_cast<std::size_t>(classes), std::vector<long long>(static_cast<std::size_t>(classes), 0));
    }

    template <typename T>
    void add(const Tensor<T>& probs, const std::vector<int>& labels) {
        if (probs.rank() != 2 || probs.shape[1] != classes_)
            throw ShapeError("evaluator: expected [N," + std::to_string(classes_) + "] probabilities, got " + probs.shape_str());
        const int n = probs.shape[0];
        if (static_cast<std::size_t>(n) != labels.size()) throw ShapeError("evaluator: probs/labels size mismatch");
        for (int i = 0; i < n; ++i) {
            const int y = labels[static_cast<std::size_t>(i)];
            if (y < 0 || y >= classes_) throw DataError("evaluator: label " + std::to_string(y) + " out of range");
            const T* row = probs.data.data() + static_cast<std::size_t>(i) * classes_;
            const double p = std::min(std::max(static_cast<double>(row[y]), static_cast<double>(kProbClamp)),
                                      1.0 - static_cast<double>(kProbClamp));
            loss_sum_ += -std::log(p);
            const int pred = argmax_index(row, classes_);
            ++confusion_[static_cast<std::size_t>(y)][static_cast<std::size_t>(pred)];
            if (pred == y) ++correct_;
            ++count_;
        }
    }

    EvalResult finish() const {
        if (count_ == 0) throw StateError("evaluator: nothing was added");
        EvalResult r;
        r.count = count_;
        r.loss = loss_sum_ / static_cast<double>(count_);
        r.accuracy = static_cast<double>(correct_) / static_cast<double>(count_);
        r.confusion = confusion_;
        r.precision.assign(static_cast<std::size_t>(classes_), 0.0);
        r.recall.assign(static_cast<std::size_t>(classes_), 0.0);
        for (int c = 0; c < classes_; ++c) {
            long long col = 0, row = 0;
            for (int j = 0; j < classes_; ++j) {
                col += confusion_[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
                row += confusion_[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
            }
            const long long diag = confusion_[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
            r.precision[static_cast<std::size_t>(c)] = col ? static_cast<double>(diag) / static_cast<double>(col) : 0.0;
            r.recall[static_cast<std::size_t>(c)] = row ? static_cast<double>(diag) / static_cast<double>(row) : 0.0;
        }
        return r;
    }

  private:
    int classes_;
    double loss_sum_ = 0;
    long long correct_ = 0;
    long long count_ = 0;
    std::vector<std::vector<long long>> confusion_;
};

// Clean inference-mode evaluation over a fixed (unshuffled) item pool.
inline EvalResult evaluate_model(ModelGraph<float>& g, ImageLoader& loader, const std::vector<int>& pool,
                                 int batch_size, int classes, int max_batches = 0) {
    if (pool.empty()) throw ConfigError("evaluate: empty item pool");
    Evaluator ev(classes);
    const auto batches = epoch_batches(pool, batch_size, 0, 0, /*shuffle=*/false);
    int done = 0;
    for (const auto& idx : batches) {
        if (max_batches > 0 && done >= max_batches) break;
        Batch b = loader.load(idx, /*epoch=*/0, /*training=*/false);
        GradTape<float> tape;
        forward(g, b.x, Mode::Infer, tape);
        ev.add(tape.act[static_cast<std::size_t>(g.output)], b.labels);
        ++done;
    }
    return ev.finish();
}

}  // namespace statecraft
