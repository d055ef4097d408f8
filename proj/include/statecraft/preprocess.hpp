#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "statecraft/common.hpp"
#include "statecraft/tensor.hpp"
#include "statecraft/weights_io.hpp"

namespace statecraft {

// ---------- resize ----------

// Bilinear, half-pixel-centered sampling (src = (dst + 0.5)·scale − 0.5),
// edge-clamped.
template <typename T>
Tensor<T> resize_bilinear(const Tensor<T>& img, int oh, int ow) {
    if (img.rank() != 3) throw ShapeError("resize: expected HWC image, got " + img.shape_str());
    const int h = img.shape[0];
    const int w = img.shape[1];
    const int c = img.shape[2];
    if (oh < 1 || ow < 1) throw ShapeError("resize: output dims must be positive");
    if (oh == h && ow == w) return img;
    Tensor<T> out({oh, ow, c});
    const double sy = static_cast<double>(h) / oh;
    const double sx = static_cast<double>(w) / ow;
    for (int y = 0; y < oh; ++y) {
        const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(h - 1));
        const int y0 = static_cast<int>(fy);
        const int y1 = std::min(y0 + 1, h - 1);
        const double wy = fy - y0;
        for (int x = 0; x < ow; ++x) {
            const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(w - 1));
            const int x0 = static_cast<int>(fx);
            const int x1 = std::min(x0 + 1, w - 1);
            const double wx = fx - x0;
            for (int k = 0; k < c; ++k) {
                const double top = (1.0 - wx) * img.at({y0, x0, k}) + wx * img.at({y0, x1, k});
                const double bot = (1.0 - wx) * img.at({y1, x0, k}) + wx * img.at({y1, x1, k});
                out.at({y, x, k}) = static_cast<T>((1.0 - wy) * top + wy * bot);
            }
        }
    }
    return out;
}

// ---------- ZCA whitening ----------

struct ZcaModel {
    Tensor<float> mean;       // [D]
    Tensor<float> whitening;  // [D, D], symmetric
    float epsilon = 1e-6f;
    std::string fitted_on;    // fingerprint of the data it was fitted on

    int dim() const { return mean.rank() == 1 ? mean.shape[0] : 0; }
};

namespace detail {

inline std::string data_fingerprint(const std::vector<Tensor<float>>& samples) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    };
    const std::uint64_t n = samples.size();
    mix(&n, sizeof n);
    for (const auto& s : samples) mix(s.data.data(), s.data.size() * sizeof(float));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace detail

// Fits W = E·(Λ+εI)^(−1/2)·Eᵀ on the flattened samples (all must share one
// shape). The covariance eigendecomposition runs in double precision.
inline ZcaModel fit_zca(const std::vector<Tensor<float>>& samples, float epsilon = 1e-6f) {
    if (samples.size() < 2)
        throw DataError("zca: need at least 2 samples, got " + std::to_string(samples.size()));
    const std::size_t d = samples[0].numel();
    if (d == 0) throw DataError("zca: empty samples");
    for (const auto& s : samples)
        if (s.numel() != d) throw ShapeError("zca: samples disagree in size");
    const auto n = static_cast<Eigen::Index>(samples.size());
    const auto dd = static_cast<Eigen::Index>(d);

    Eigen::MatrixXd x(n, dd);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < dd; ++j)
            x(i, j) = samples[static_cast<std::size_t>(i)].data[static_cast<std::size_t>(j)];

    const Eigen::RowVectorXd mu = x.colwise().mean();
    x.rowwise() -= mu;
    const Eigen::MatrixXd sigma = (x.transpose() * x) / static_cast<double>(n);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
    if (es.info() != Eigen::Success) throw NumericError("zca: eigendecomposition failed");
    const Eigen::VectorXd lam = es.eigenvalues();
    const Eigen::MatrixXd& e = es.eigenvectors();
    Eigen::VectorXd inv_sqrt(dd);
    for (Eigen::Index j = 0; j < dd; ++j) inv_sqrt(j) = 1.0 / std::sqrt(std::max(lam(j), 0.0) + epsilon);
    const Eigen::MatrixXd w = e * inv_sqrt.asDiagonal() * e.transpose();

    ZcaModel m;
    m.epsilon = epsilon;
    m.fitted_on = detail::data_fingerprint(samples);
    m.mean = Tensor<float>({static_cast<int>(d)});
    m.whitening = Tensor<float>({static_cast<int>(d), static_cast<int>(d)});
    for (Eigen::Index j = 0; j < dd; ++j) m.mean.data[static_cast<std::size_t>(j)] = static_cast<float>(mu(j));
    for (Eigen::Index r = 0; r < dd; ++r)
        for (Eigen::Index cc = 0; cc < dd; ++cc)
            m.whitening.data[static_cast<std::size_t>(r * dd + cc)] = static_cast<float>(w(r, cc));
    return m;
}

// y = W·(x − μ), reshaped back to x's shape.
inline Tensor<float> zca_apply(const ZcaModel& m, const Tensor<float>& x) {
    const int d = m.dim();
    if (static_cast<std::size_t>(d) != x.numel())
        throw ShapeError("zca: model dimension " + std::to_string(d) + " does not match input " + x.shape_str());
    std::vector<double> centered(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) centered[static_cast<std::size_t>(j)] = x.data[static_cast<std::size_t>(j)] - m.mean.data[static_cast<std::size_t>(j)];
    Tensor<float> out(x.shape);
    const float* w = m.whitening.data.data();
    parallel_for(d, [&](int lo, int hi) {
        for (int r = lo; r < hi; ++r) {
            const float* row = w + static_cast<std::size_t>(r) * d;
            double acc = 0;
            for (int j = 0; j < d; ++j) acc += row[j] * centered[static_cast<std::size_t>(j)];
            out.data[static_cast<std::size_t>(r)] = static_cast<float>(acc);
        }
    });
    return out;
}

inline void save_zca(const ZcaModel& m, const std::string& path) {
    Tensor<float> eps({1});
    eps.data[0] = m.epsilon;
    write_archive(path, {{"zca/mean", m.mean}, {"zca/whitening", m.whitening}, {"zca/epsilon", eps}});
}

inline ZcaModel load_zca(const std::string& path) {
    ZcaModel m;
    for (auto& t : read_archive(path)) {
        if (t.name == "zca/mean")
            m.mean = std::move(t.value);
        else if (t.name == "zca/whitening")
            m.whitening = std::move(t.value);
        else if (t.name == "zca/epsilon")
            m.epsilon = t.value.numel() ? t.value.data[0] : m.epsilon;
    }
    if (!m.mean.numel() || !m.whitening.numel()) throw FormatError("zca: " + path + " lacks mean/whitening entries");
    if (m.whitening.rank() != 2 || m.whitening.shape[0] != m.dim() || m.whitening.shape[1] != m.dim())
        throw FormatError("zca: inconsistent shapes in " + path);
    return m;
}

// ---------- the fixed preprocessing pipeline ----------

// resize -> scale by 1/255 -> subtract the sample's mean -> divide by the
// sample's std (floored at 1e-6) -> optional ZCA. Accumulation in double so
// the post-normalization moments hold tightly even for large images.
inline Tensor<float> preprocess(const Tensor<float>& img, int out_h, int out_w, const ZcaModel* zca = nullptr) {
    Tensor<float> x = resize_bilinear(img, out_h, out_w);
    const std::size_t n = x.numel();
    double sum = 0;
    for (float v : x.data) sum += v * (1.0 / 255.0);
    const double mean = sum / static_cast<double>(n);
    double var = 0;
    for (float v : x.data) {
        const double d = v * (1.0 / 255.0) - mean;
        var += d * d;
    }
    const double std_dev = std::max(std::sqrt(var / static_cast<double>(n)), 1e-6);
    for (float& v : x.data) v = static_cast<float>((v * (1.0 / 255.0) - mean) / std_dev);
    if (zca) return zca_apply(*zca, x);
    return x;
}

}  // namespace statecraft
