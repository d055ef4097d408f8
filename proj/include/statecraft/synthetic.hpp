#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "statecraft/common.hpp"
#include "statecraft/data.hpp"
#include "statecraft/image_io.hpp"
#include "statecraft/rng.hpp"
#include "statecraft/tensor.hpp"

namespace statecraft {

// Procedural 11-class benchmark: simple textures a small convnet can learn
// quickly, with per-image randomized colors, geometry, and pixel noise so
// the task is not memorizable from a single pixel.

inline const std::vector<std::string>& synthetic_class_names() {
    static const std::vector<std::string> names = {
        "c00_solid", "c01_hstripes", "c02_vstripes", "c03_diagonal", "c04_checker", "c05_disc",
        "c06_rings", "c07_gradient", "c08_dots",     "c09_cross",    "c10_blocks",
    };
    return names;
}

inline Tensor<float> synthetic_image(int cls, int hw, Rng& rng) {
    if (cls < 0 || cls >= static_cast<int>(synthetic_class_names().size()))
        throw ConfigError("synthetic: class index " + std::to_string(cls) + " out of range");
    if (hw < 16) throw ConfigError("synthetic: image size must be at least 16");
    Tensor<float> img({hw, hw, 3});

    auto color = [&rng]() {
        return std::array<double, 3>{rng.uniform(30, 225), rng.uniform(30, 225), rng.uniform(30, 225)};
    };
    const auto a = color();
    auto b = color();
    // Keep the two palette colors apart so every pattern has contrast.
    for (int k = 0; k < 3; ++k)
        if (std::abs(a[static_cast<std::size_t>(k)] - b[static_cast<std::size_t>(k)]) < 40)
            b[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)] > 127 ? a[static_cast<std::size_t>(k)] - 80
                                                                                  : a[static_cast<std::size_t>(k)] + 80;

    const int period = static_cast<int>(rng.uniform_int(hw / 12, hw / 6));
    const int phase = static_cast<int>(rng.uniform_int(0, period * 2 - 1));
    const double ccy = rng.uniform(hw * 0.3, hw * 0.7);
    const double ccx = rng.uniform(hw * 0.3, hw * 0.7);
    const double radius = rng.uniform(hw * 0.2, hw * 0.4);
    const double angle = rng.uniform(0, 2 * 3.14159265358979323846);
    const double gx = std::cos(angle);
    const double gy = std::sin(angle);
    const int bar = std::max(2, hw / 10);

    // Coarse random block values for the blocks class, drawn up front so
    // pixel order does not matter.
    const int bsz = std::max(4, hw / 8);
    const int bn = (hw + bsz - 1) / bsz;
    std::vector<double> blocks(static_cast<std::size_t>(bn) * bn * 3);
    for (auto& v : blocks) v = rng.uniform(20, 235);

    for (int y = 0; y < hw; ++y) {
        for (int x = 0; x < hw; ++x) {
            bool first = true;
            double t = 0;  // blend factor for gradient-like classes
            switch (cls) {
                case 0: first = true; break;
                case 1: first = ((y + phase) / period) % 2 == 0; break;
                case 2: first = ((x + phase) / period) % 2 == 0; break;
                case 3: first = ((x + y + phase) / period) % 2 == 0; break;
                case 4: first = (((x + phase) / period) + ((y + phase) / period)) % 2 == 0; break;
                case 5: {
                    const double d = std::hypot(y - ccy, x - ccx);
                    first = d > radius;
                    break;
                }
                case 6: {
                    const double d = std::hypot(y - ccy, x - ccx);
                    first = (static_cast<int>(d) / period) % 2 == 0;
                    break;
                }
                case 7: {
                    t = ((x - hw / 2.0) * gx + (y - hw / 2.0) * gy) / hw + 0.5;
                    t = std::clamp(t, 0.0, 1.0);
                    break;
                }
                case 8: {
                    const int py = (y + phase) % period;
                    const int px = (x + phase) % period;
                    const double d = std::hypot(py - period / 2.0, px - period / 2.0);
                    first = d > period * 0.3;
                    break;
                }
                case 9:
                    first = !(std::abs(y - static_cast<int>(ccy)) < bar || std::abs(x - static_cast<int>(ccx)) < bar);
                    break;
                default: break;
            }
            for (int k = 0; k < 3; ++k) {
                double v;
                if (cls == 7)
                    v = (1.0 - t) * a[static_cast<std::size_t>(k)] + t * b[static_cast<std::size_t>(k)];
                else if (cls == 10)
                    v = blocks[static_cast<std::size_t>((y / bsz) * bn + (x / bsz)) * 3 + static_cast<std::size_t>(k)];
                else
                    v = first ? a[static_cast<std::size_t>(k)] : b[static_cast<std::size_t>(k)];
                img.at({y, x, k}) = static_cast<float>(v);
            }
        }
    }
    for (auto& v : img.data) v = static_cast<float>(std::clamp(v + rng.normal(0, 8), 0.0, 255.0));
    return img;
}

struct SyntheticSpec {
    int classes = 11;
    int per_class = 50;
    int hw = 64;
    std::uint64_t seed = 0;
};

// Writes root/<class>/img_NNN.png for every class and index; same spec,
// same bytes.
inline void generate_synthetic_dataset(const std::string& root, const SyntheticSpec& spec) {
    if (spec.classes < 2 || spec.classes > static_cast<int>(synthetic_class_names().size()))
        throw ConfigError("synthetic: class count must be in [2, " +
                          std::to_string(synthetic_class_names().size()) + "]");
    if (spec.per_class < 1) throw ConfigError("synthetic: per_class must be >= 1");
    for (int c = 0; c < spec.classes; ++c) {
        for (int i = 0; i < spec.per_class; ++i) {
            Rng rng(derive_seed(spec.seed, {seed_stream::kSynthetic, static_cast<std::uint64_t>(c),
                                            static_cast<std::uint64_t>(i)}));
            const Tensor<float> img = synthetic_image(c, spec.hw, rng);
            char name[32];
            std::snprintf(name, sizeof name, "img_%03d.png", i);
            save_png(root + "/" + synthetic_class_names()[static_cast<std::size_t>(c)] + "/" + name, img);
        }
    }
}

}  // namespace statecraft
