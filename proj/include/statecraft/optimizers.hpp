#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "statecraft/graph.hpp"

namespace statecraft {

struct AdamConfig {
    double lr = 1e-5;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct SgdConfig {
    double lr = 1e-4;
    double momentum = 0.9;
    bool nesterov = true;
};

struct RmspropConfig {
    double lr = 1e-5;
    double rho = 0.9;
    double eps = 1e-7;
};

using OptimizerConfig = std::variant<AdamConfig, SgdConfig, RmspropConfig>;

inline const char* optimizer_name(const OptimizerConfig& c) {
    if (std::holds_alternative<AdamConfig>(c)) return "adam";
    if (std::holds_alternative<SgdConfig>(c)) return "sgd";
    return "rmsprop";
}

inline double optimizer_lr(const OptimizerConfig& c) {
    return std::visit([](const auto& v) { return v.lr; }, c);
}

// Updates the trainable, unfrozen parameters of the graph it was attached
// to. Slot state is keyed by parameter name so checkpoints can round-trip.
template <typename T>
class Optimizer {
  public:
    struct Slot {
        std::string param;
        Tensor<T>* value = nullptr;
        Tensor<T>* grad = nullptr;
        Tensor<T> a, b;  // adam: m,v; sgd: velocity in a; rmsprop: s in a
    };

    Optimizer(OptimizerConfig cfg, double l2 = 0.0) : cfg_(cfg), l2_(l2) {
        if (l2 < 0) throw ConfigError("optimizer: negative L2 coefficient");
    }

    void attach(ModelGraph<T>& g) {
        slots_.clear();
        t_ = 0;
        for (auto& l : g.layers) {
            if (l.frozen) continue;
            for (auto& p : layer_params(l)) {
                if (!p.trainable) continue;
                Slot s;
                s.param = p.name;
                s.value = p.value;
                s.grad = p.grad;
                s.a = zeros_like(*p.value);
                if (std::holds_alternative<AdamConfig>(cfg_)) s.b = zeros_like(*p.value);
                slots_.push_back(std::move(s));
            }
        }
    }

    bool attached() const { return !slots_.empty(); }
    std::int64_t steps() const { return t_; }
    void set_steps(std::int64_t t) { t_ = t; }

    double lr() const { return optimizer_lr(cfg_); }
    void set_lr(double lr) {
        std::visit([lr](auto& v) { v.lr = lr; }, cfg_);
    }

    // Divides the rate by `factor`, clamping at `floor`.
    void step_lr_down(double factor = 10.0, double floor = 1e-6) {
        if (factor <= 1.0) throw ConfigError("step_lr_down: factor must be > 1");
        set_lr(std::max(floor, lr() / factor));
    }

    const OptimizerConfig& config() const { return cfg_; }
    double l2() const { return l2_; }

    void step() {
        if (slots_.empty()) throw StateError("optimizer: no attached parameters");
        ++t_;
        if (auto* adam = std::get_if<AdamConfig>(&cfg_)) {
            const T lr = static_cast<T>(adam->lr), b1 = static_cast<T>(adam->beta1), b2 = static_cast<T>(adam->beta2),
                    eps = static_cast<T>(adam->eps);
            const T c1 = T(1) - static_cast<T>(std::pow(adam->beta1, static_cast<double>(t_)));
            const T c2 = T(1) - static_cast<T>(std::pow(adam->beta2, static_cast<double>(t_)));
            for (Slot& s : slots_)
                for (std::int64_t i = 0; i < s.value->numel(); ++i) {
                    const T g = grad_at(s, i);
                    s.a.at(i) = b1 * s.a.at(i) + (T(1) - b1) * g;
                    s.b.at(i) = b2 * s.b.at(i) + (T(1) - b2) * g * g;
                    const T mhat = s.a.at(i) / c1;
                    const T vhat = s.b.at(i) / c2;
                    s.value->at(i) -= lr * mhat / (std::sqrt(vhat) + eps);
                }
        } else if (auto* sgd = std::get_if<SgdConfig>(&cfg_)) {
            const T lr = static_cast<T>(sgd->lr), mu = static_cast<T>(sgd->momentum);
            for (Slot& s : slots_)
                for (std::int64_t i = 0; i < s.value->numel(); ++i) {
                    const T g = grad_at(s, i);
                    const T v = mu * s.a.at(i) - lr * g;
                    s.a.at(i) = v;
                    s.value->at(i) += sgd->nesterov ? mu * v - lr * g : v;
                }
        } else {
            const auto& rms = std::get<RmspropConfig>(cfg_);
            const T lr = static_cast<T>(rms.lr), rho = static_cast<T>(rms.rho), eps = static_cast<T>(rms.eps);
            for (Slot& s : slots_)
                for (std::int64_t i = 0; i < s.value->numel(); ++i) {
                    const T g = grad_at(s, i);
                    s.a.at(i) = rho * s.a.at(i) + (T(1) - rho) * g * g;
                    s.value->at(i) -= lr * g / (std::sqrt(s.a.at(i)) + eps);
                }
        }
    }

    std::vector<Slot>& slots() { return slots_; }
    const std::vector<Slot>& slots() const { return slots_; }

  private:
    T grad_at(const Slot& s, std::int64_t i) const {
        T g = s.grad->at(i);
        if (l2_ > 0) g += static_cast<T>(l2_) * s.value->at(i);
        return g;
    }

    OptimizerConfig cfg_;
    double l2_;
    std::int64_t t_ = 0;
    std::vector<Slot> slots_;
};

}  // namespace statecraft
