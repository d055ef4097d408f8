#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "statecraft/common.hpp"
#include "statecraft/rng.hpp"

namespace statecraft {

template <typename T>
const char* dtype_name();
template <>
inline const char* dtype_name<float>() { return "f32"; }
template <>
inline const char* dtype_name<double>() { return "f64"; }

// Dense row-major tensor. Images and activations are NHWC.
template <typename T>
struct Tensor {
    std::vector<int> shape;
    std::vector<T> data;

    Tensor() = default;
    explicit Tensor(std::vector<int> s) : shape(std::move(s)), data(checked_numel(shape), T(0)) {}
    Tensor(std::vector<int> s, std::vector<T> d) : shape(std::move(s)), data(std::move(d)) {
        if (checked_numel(shape) != static_cast<std::int64_t>(data.size()))
            throw ShapeError("tensor: data size does not match shape " + shape_str());
    }

    static std::int64_t checked_numel(const std::vector<int>& s) {
        std::int64_t n = 1;
        for (int d : s) {
            if (d < 0) throw ShapeError("tensor: negative dimension");
            n *= d;
        }
        return n;
    }

    std::int64_t numel() const { return static_cast<std::int64_t>(data.size()); }
    int dim(int i) const { return shape[static_cast<std::size_t>(i)]; }
    int rank() const { return static_cast<int>(shape.size()); }

    T& at(std::int64_t i) { return data[static_cast<std::size_t>(i)]; }
    const T& at(std::int64_t i) const { return data[static_cast<std::size_t>(i)]; }

    std::int64_t offset(std::initializer_list<int> idx) const {
        std::int64_t off = 0;
        std::size_t d = 0;
        for (int i : idx) off = off * shape[d++] + i;
        return off;
    }
    T& at(std::initializer_list<int> idx) { return data[static_cast<std::size_t>(offset(idx))]; }
    const T& at(std::initializer_list<int> idx) const { return data[static_cast<std::size_t>(offset(idx))]; }

    // NHWC addressing
    T& at4(int n, int h, int w, int c) {
        return data[((static_cast<std::int64_t>(n) * shape[1] + h) * shape[2] + w) * shape[3] + c];
    }
    const T& at4(int n, int h, int w, int c) const {
        return data[((static_cast<std::int64_t>(n) * shape[1] + h) * shape[2] + w) * shape[3] + c];
    }
    T& at2(int r, int c) { return data[static_cast<std::int64_t>(r) * shape[1] + c]; }
    const T& at2(int r, int c) const { return data[static_cast<std::int64_t>(r) * shape[1] + c]; }

    void fill(T v) { std::fill(data.begin(), data.end(), v); }

    std::string shape_str() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "," : "") << shape[i];
        os << "]";
        return os.str();
    }

    bool same_shape(const Tensor& o) const { return shape == o.shape; }
};

template <typename T>
Tensor<T> zeros_like(const Tensor<T>& t) {
    return Tensor<T>(t.shape);
}

template <typename T>
bool all_finite(const Tensor<T>& t) {
    for (const T& v : t.data)
        if (!std::isfinite(static_cast<double>(v))) return false;
    return true;
}

template <typename T>
void ensure_finite(const Tensor<T>& t, const char* what) {
    if (!all_finite(t)) throw NumericError(std::string(what) + ": non-finite values");
}

template <typename T>
void fill_uniform(Tensor<T>& t, Rng& rng, double lo, double hi) {
    for (T& v : t.data) v = static_cast<T>(rng.uniform(lo, hi));
}

// Glorot/Xavier uniform over the given fan-in/fan-out.
template <typename T>
void fill_glorot(Tensor<T>& t, Rng& rng, std::int64_t fan_in, std::int64_t fan_out) {
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    fill_uniform(t, rng, -limit, limit);
}

}  // namespace statecraft
