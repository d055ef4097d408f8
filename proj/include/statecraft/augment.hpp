#pragma once

#include <algorithm>
#include <cmath>

#include "statecraft/common.hpp"
#include "statecraft/rng.hpp"
#include "statecraft/tensor.hpp"

namespace statecraft {

// Random-affine training augmentation. One transform per image, composed
// (in forward order) flip -> zoom -> shear -> rotate -> shift, sampled
// bilinearly with edge-clamp fill so out-of-bounds reads take the nearest
// border pixel. Output shape always equals input shape.

struct AugmentSpec {
    bool hflip = true;
    bool vflip = true;
    double shear = 0.2;         // shear factor ~ U[-shear, shear]
    double shift = 0.2;         // x/y shift ~ U[-shift, shift] * dimension
    double zoom = 0.2;          // zoom ~ U[1-zoom, 1+zoom]
    double rotation_deg = 30;   // rotation ~ U[-deg, +deg]

    bool identity() const {
        return !hflip && !vflip && shear == 0 && shift == 0 && zoom == 0 && rotation_deg == 0;
    }

    static AugmentSpec none() {
        AugmentSpec s;
        s.hflip = s.vflip = false;
        s.shear = s.shift = s.zoom = s.rotation_deg = 0;
        return s;
    }
};

struct AugmentParams {
    bool flip_h = false;
    bool flip_v = false;
    double zoom = 1.0;
    double shear = 0.0;
    double rot_rad = 0.0;
    double shift_x = 0.0;  // fraction of width
    double shift_y = 0.0;  // fraction of height
};

// Draw order is part of the determinism contract: hflip, vflip, zoom,
// shear, rotation, shift_x, shift_y; disabled components consume no draws.
inline AugmentParams sample_augment(const AugmentSpec& spec, Rng& rng) {
    AugmentParams p;
    if (spec.hflip) p.flip_h = rng.bernoulli(0.5);
    if (spec.vflip) p.flip_v = rng.bernoulli(0.5);
    if (spec.zoom != 0) p.zoom = rng.uniform(1.0 - spec.zoom, 1.0 + spec.zoom);
    if (spec.shear != 0) p.shear = rng.uniform(-spec.shear, spec.shear);
    if (spec.rotation_deg != 0) p.rot_rad = rng.uniform(-spec.rotation_deg, spec.rotation_deg) * (3.14159265358979323846 / 180.0);
    if (spec.shift != 0) {
        p.shift_x = rng.uniform(-spec.shift, spec.shift);
        p.shift_y = rng.uniform(-spec.shift, spec.shift);
    }
    return p;
}

namespace detail {

template <typename T>
T sample_clamped(const Tensor<T>& img, double y, double x, int k) {
    const int h = img.shape[0];
    const int w = img.shape[1];
    const double fy = std::clamp(y, 0.0, static_cast<double>(h - 1));
    const double fx = std::clamp(x, 0.0, static_cast<double>(w - 1));
    const int y0 = static_cast<int>(fy);
    const int x0 = static_cast<int>(fx);
    const int y1 = std::min(y0 + 1, h - 1);
    const int x1 = std::min(x0 + 1, w - 1);
    const double wy = fy - y0;
    const double wx = fx - x0;
    const double top = (1.0 - wx) * img.at({y0, x0, k}) + wx * img.at({y0, x1, k});
    const double bot = (1.0 - wx) * img.at({y1, x0, k}) + wx * img.at({y1, x1, k});
    return static_cast<T>((1.0 - wy) * top + wy * bot);
}

}  // namespace detail

template <typename T>
Tensor<T> apply_augment(const Tensor<T>& img, const AugmentParams& p) {
    if (img.rank() != 3) throw ShapeError("augment: expected HWC image, got " + img.shape_str());
    const int h = img.shape[0];
    const int w = img.shape[1];
    const int c = img.shape[2];
    const double cy = (h - 1) / 2.0;
    const double cx = (w - 1) / 2.0;
    const double tx = p.shift_x * w;
    const double ty = p.shift_y * h;

    // Inverse mapping (output pixel -> input coordinates), about the center:
    // undo shift, rotation, shear (x by y), zoom, flips, in that order.
    const double cosr = std::cos(-p.rot_rad);
    const double sinr = std::sin(-p.rot_rad);
    const double iz = 1.0 / p.zoom;

    Tensor<T> out({h, w, c});
    for (int yo = 0; yo < h; ++yo) {
        for (int xo = 0; xo < w; ++xo) {
            double u = (xo - cx) - tx;
            double v = (yo - cy) - ty;
            const double ur = cosr * u - sinr * v;
            const double vr = sinr * u + cosr * v;
            u = ur - p.shear * vr;
            v = vr;
            u *= iz;
            v *= iz;
            if (p.flip_h) u = -u;
            if (p.flip_v) v = -v;
            for (int k = 0; k < c; ++k) out.at({yo, xo, k}) = detail::sample_clamped(img, v + cy, u + cx, k);
        }
    }
    return out;
}

template <typename T>
Tensor<T> augment(const Tensor<T>& img, const AugmentSpec& spec, Rng& rng) {
    if (spec.identity()) return img;
    return apply_augment(img, sample_augment(spec, rng));
}

}  // namespace statecraft
