#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "statecraft/common.hpp"
#include "statecraft/tensor.hpp"

namespace statecraft {

// ---------- shape arithmetic ----------

struct ConvDims {
    int oh = 0, ow = 0;
    int pad_top = 0, pad_left = 0;
};

// TensorFlow-style padding: "same" => ceil(in/stride) with any odd padding
// going to the bottom/right edge.
inline ConvDims conv_output_dims(int h, int w, int kh, int kw, int sh, int sw, Padding pad) {
    if (h <= 0 || w <= 0 || kh <= 0 || kw <= 0 || sh <= 0 || sw <= 0)
        throw ShapeError("conv_output_dims: non-positive dimension");
    ConvDims d;
    if (pad == Padding::Same) {
        d.oh = (h + sh - 1) / sh;
        d.ow = (w + sw - 1) / sw;
        const int ph = std::max(0, (d.oh - 1) * sh + kh - h);
        const int pw = std::max(0, (d.ow - 1) * sw + kw - w);
        d.pad_top = ph / 2;
        d.pad_left = pw / 2;
    } else {
        if (h < kh || w < kw) throw ShapeError("conv_output_dims: kernel larger than input under valid padding");
        d.oh = (h - kh) / sh + 1;
        d.ow = (w - kw) / sw + 1;
    }
    return d;
}

// ---------- matmul family ----------

// C[M,N] = A[M,K] * B[K,N]. Parallel over rows of C; each element is a
// serial dot product, so results do not depend on the thread count.
template <typename T>
Tensor<T> matmul(const Tensor<T>& a, const Tensor<T>& b) {
    if (a.rank() != 2 || b.rank() != 2 || a.dim(1) != b.dim(0))
        throw ShapeError("matmul: incompatible shapes " + a.shape_str() + " x " + b.shape_str());
    const int m = a.dim(0), k = a.dim(1), n = b.dim(1);
    Tensor<T> c({m, n});
    parallel_for(m, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            const T* arow = a.data.data() + i * k;
            T* crow = c.data.data() + i * n;
            for (int kk = 0; kk < k; ++kk) {
                const T av = arow[kk];
                if (av == T(0)) continue;
                const T* brow = b.data.data() + static_cast<std::int64_t>(kk) * n;
                for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
            }
        }
    });
    return c;
}

// C[K,N] = A[M,K]^T * B[M,N]
template <typename T>
Tensor<T> matmul_tn(const Tensor<T>& a, const Tensor<T>& b) {
    if (a.rank() != 2 || b.rank() != 2 || a.dim(0) != b.dim(0))
        throw ShapeError("matmul_tn: incompatible shapes " + a.shape_str() + " x " + b.shape_str());
    const int m = a.dim(0), k = a.dim(1), n = b.dim(1);
    Tensor<T> c({k, n});
    parallel_for(k, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            T* crow = c.data.data() + i * n;
            for (int mm = 0; mm < m; ++mm) {
                const T av = a.data[static_cast<std::int64_t>(mm) * k + i];
                if (av == T(0)) continue;
                const T* brow = b.data.data() + static_cast<std::int64_t>(mm) * n;
                for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
            }
        }
    });
    return c;
}

// C[M,K] = A[M,N] * B[K,N]^T
template <typename T>
Tensor<T> matmul_nt(const Tensor<T>& a, const Tensor<T>& b) {
    if (a.rank() != 2 || b.rank() != 2 || a.dim(1) != b.dim(1))
        throw ShapeError("matmul_nt: incompatible shapes " + a.shape_str() + " x " + b.shape_str());
    const int m = a.dim(0), n = a.dim(1), k = b.dim(0);
    Tensor<T> c({m, k});
    parallel_for(m, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            const T* arow = a.data.data() + i * n;
            T* crow = c.data.data() + i * k;
            for (int j = 0; j < k; ++j) {
                const T* brow = b.data.data() + static_cast<std::int64_t>(j) * n;
                T acc = 0;
                for (int nn = 0; nn < n; ++nn) acc += arow[nn] * brow[nn];
                crow[j] = acc;
            }
        }
    });
    return c;
}

template <typename T>
Tensor<T> add(const Tensor<T>& a, const Tensor<T>& b) {
    if (!a.same_shape(b)) throw ShapeError("add: shape mismatch " + a.shape_str() + " vs " + b.shape_str());
    Tensor<T> c = a;
    for (std::int64_t i = 0; i < c.numel(); ++i) c.at(i) += b.at(i);
    return c;
}

// ---------- im2col convolution ----------

template <typename T>
Tensor<T> im2col(const Tensor<T>& x, int kh, int kw, int sh, int sw, Padding pad, ConvDims& dims) {
    if (x.rank() != 4) throw ShapeError("im2col: expected NHWC, got " + x.shape_str());
    const int n = x.dim(0), h = x.dim(1), w = x.dim(2), c = x.dim(3);
    dims = conv_output_dims(h, w, kh, kw, sh, sw, pad);
    const int cols = kh * kw * c;
    Tensor<T> out({n * dims.oh * dims.ow, cols});
    parallel_for(static_cast<std::int64_t>(n) * dims.oh * dims.ow, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t r = lo; r < hi; ++r) {
            const int ow = static_cast<int>(r % dims.ow);
            const int oh = static_cast<int>((r / dims.ow) % dims.oh);
            const int nn = static_cast<int>(r / (static_cast<std::int64_t>(dims.ow) * dims.oh));
            T* dst = out.data.data() + r * cols;
            for (int dh = 0; dh < kh; ++dh) {
                const int ih = oh * sh - dims.pad_top + dh;
                for (int dw = 0; dw < kw; ++dw) {
                    const int iw = ow * sw - dims.pad_left + dw;
                    if (ih >= 0 && ih < h && iw >= 0 && iw < w) {
                        const T* src = &x.at4(nn, ih, iw, 0);
                        std::copy(src, src + c, dst);
                    } else {
                        std::fill(dst, dst + c, T(0));
                    }
                    dst += c;
                }
            }
        }
    });
    return out;
}

template <typename T>
Tensor<T> col2im(const Tensor<T>& col, int n, int h, int w, int c, int kh, int kw, int sh, int sw,
                 const ConvDims& dims) {
    Tensor<T> x({n, h, w, c});
    // Overlapping taps accumulate; parallelize over batch items only so each
    // input pixel is written by a single thread in a fixed order.
    parallel_for(n, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t nn = lo; nn < hi; ++nn) {
            for (int oh = 0; oh < dims.oh; ++oh) {
                for (int ow = 0; ow < dims.ow; ++ow) {
                    const std::int64_t r = (nn * dims.oh + oh) * dims.ow + ow;
                    const T* src = col.data.data() + r * (static_cast<std::int64_t>(kh) * kw * c);
                    for (int dh = 0; dh < kh; ++dh) {
                        const int ih = oh * sh - dims.pad_top + dh;
                        for (int dw = 0; dw < kw; ++dw) {
                            const int iw = ow * sw - dims.pad_left + dw;
                            if (ih >= 0 && ih < h && iw >= 0 && iw < w) {
                                T* dst = &x.at4(static_cast<int>(nn), ih, iw, 0);
                                const T* s = src + (dh * kw + dw) * c;
                                for (int cc = 0; cc < c; ++cc) dst[cc] += s[cc];
                            }
                        }
                    }
                }
            }
        }
    });
    return x;
}

// kernel is [kh, kw, cin, cout]; bias may be empty (bias-free convolution).
template <typename T>
Tensor<T> conv2d_forward(const Tensor<T>& x, const Tensor<T>& kernel, const Tensor<T>& bias, int sh, int sw,
                         Padding pad) {
    if (x.rank() != 4 || kernel.rank() != 4) throw ShapeError("conv2d: expected NHWC input and [kh,kw,cin,cout] kernel");
    if (x.dim(3) != kernel.dim(2))
        throw ShapeError("conv2d: input channels " + x.shape_str() + " do not match kernel " + kernel.shape_str());
    const int kh = kernel.dim(0), kw = kernel.dim(1), cout = kernel.dim(3);
    if (bias.numel() != 0 && bias.numel() != cout) throw ShapeError("conv2d: bias size mismatch");
    ConvDims dims;
    Tensor<T> col = im2col(x, kh, kw, sh, sw, pad, dims);
    Tensor<T> kmat({kh * kw * x.dim(3), cout}, kernel.data);
    Tensor<T> y = matmul(col, kmat);
    if (bias.numel()) {
        parallel_for(y.dim(0), [&](std::int64_t lo, std::int64_t hi) {
            for (std::int64_t r = lo; r < hi; ++r) {
                T* row = y.data.data() + r * cout;
                for (int j = 0; j < cout; ++j) row[j] += bias.data[j];
            }
        });
    }
    y.shape = {x.dim(0), dims.oh, dims.ow, cout};
    return y;
}

template <typename T>
struct ConvGrads {
    Tensor<T> dx, dkernel, dbias;
};

template <typename T>
ConvGrads<T> conv2d_backward(const Tensor<T>& x, const Tensor<T>& kernel, const Tensor<T>& dy, int sh, int sw,
                             Padding pad, bool has_bias, bool need_dparams = true, bool need_dx = true) {
    const int kh = kernel.dim(0), kw = kernel.dim(1), cin = kernel.dim(2), cout = kernel.dim(3);
    const ConvDims dims = conv_output_dims(x.dim(1), x.dim(2), kh, kw, sh, sw, pad);
    Tensor<T> dymat({x.dim(0) * dims.oh * dims.ow, cout}, dy.data);
    ConvGrads<T> g;
    if (need_dparams) {
        ConvDims unused;
        Tensor<T> col = im2col(x, kh, kw, sh, sw, pad, unused);
        Tensor<T> dkmat = matmul_tn(col, dymat);
        g.dkernel = Tensor<T>({kh, kw, cin, cout}, std::move(dkmat.data));
        if (has_bias) {
            g.dbias = Tensor<T>({cout});
            for (std::int64_t r = 0; r < dymat.dim(0); ++r)
                for (int j = 0; j < cout; ++j) g.dbias.data[j] += dymat.data[r * cout + j];
        }
    }
    if (need_dx) {
        Tensor<T> kmat({kh * kw * cin, cout}, kernel.data);
        Tensor<T> dcol = matmul_nt(dymat, kmat);
        g.dx = col2im(dcol, x.dim(0), x.dim(1), x.dim(2), cin, kh, kw, sh, sw, dims);
    }
    return g;
}

// ---------- activations ----------

template <typename T>
Tensor<T> relu_forward(const Tensor<T>& x) {
    Tensor<T> y = x;
    for (T& v : y.data) v = v > T(0) ? v : T(0);
    return y;
}

template <typename T>
Tensor<T> relu_backward(const Tensor<T>& x, const Tensor<T>& dy) {
    if (!x.same_shape(dy)) throw ShapeError("relu_backward: shape mismatch");
    Tensor<T> dx = dy;
    for (std::int64_t i = 0; i < dx.numel(); ++i)
        if (x.at(i) <= T(0)) dx.at(i) = T(0);
    return dx;
}

// Stable softmax over the last axis of a [N, K] tensor.
template <typename T>
Tensor<T> softmax_forward(const Tensor<T>& x) {
    if (x.rank() != 2) throw ShapeError("softmax: expected [N,K], got " + x.shape_str());
    const int n = x.dim(0), k = x.dim(1);
    Tensor<T> y = x;
    for (int i = 0; i < n; ++i) {
        T* row = y.data.data() + static_cast<std::int64_t>(i) * k;
        T mx = row[0];
        for (int j = 1; j < k; ++j) mx = std::max(mx, row[j]);
        T sum = 0;
        for (int j = 0; j < k; ++j) {
            row[j] = std::exp(row[j] - mx);
            sum += row[j];
        }
        for (int j = 0; j < k; ++j) row[j] /= sum;
    }
    ensure_finite(y, "softmax");
    return y;
}

// dx = p .* (dy - sum(dy .* p)) rowwise
template <typename T>
Tensor<T> softmax_backward(const Tensor<T>& p, const Tensor<T>& dy) {
    if (!p.same_shape(dy)) throw ShapeError("softmax_backward: shape mismatch");
    const int n = p.dim(0), k = p.dim(1);
    Tensor<T> dx({n, k});
    for (int i = 0; i < n; ++i) {
        const T* prow = p.data.data() + static_cast<std::int64_t>(i) * k;
        const T* gyrow = dy.data.data() + static_cast<std::int64_t>(i) * k;
        T dot = 0;
        for (int j = 0; j < k; ++j) dot += gyrow[j] * prow[j];
        T* dxrow = dx.data.data() + static_cast<std::int64_t>(i) * k;
        for (int j = 0; j < k; ++j) dxrow[j] = prow[j] * (gyrow[j] - dot);
    }
    return dx;
}

inline constexpr double kProbClamp = 1e-7;

// Mean negative log likelihood of the target class. Probabilities are
// clamped to [1e-7, 1 - 1e-7] before the log.
template <typename T>
T cross_entropy_forward(const Tensor<T>& probs, const std::vector<int>& labels) {
    if (probs.rank() != 2 || static_cast<std::size_t>(probs.dim(0)) != labels.size())
        throw ShapeError("cross_entropy: probabilities " + probs.shape_str() + " vs " + std::to_string(labels.size()) + " labels");
    const int n = probs.dim(0), k = probs.dim(1);
    double loss = 0;
    for (int i = 0; i < n; ++i) {
        const int t = labels[static_cast<std::size_t>(i)];
        if (t < 0 || t >= k) throw DataError("cross_entropy: label out of range");
        double p = static_cast<double>(probs.at2(i, t));
        p = std::min(1.0 - kProbClamp, std::max(kProbClamp, p));
        loss -= std::log(p);
    }
    const T out = static_cast<T>(loss / n);
    if (!std::isfinite(static_cast<double>(out))) throw NumericError("cross_entropy: non-finite loss");
    return out;
}

template <typename T>
Tensor<T> cross_entropy_backward(const Tensor<T>& probs, const std::vector<int>& labels) {
    const int n = probs.dim(0), k = probs.dim(1);
    Tensor<T> dp({n, k});
    for (int i = 0; i < n; ++i) {
        const int t = labels[static_cast<std::size_t>(i)];
        double p = static_cast<double>(probs.at2(i, t));
        p = std::min(1.0 - kProbClamp, std::max(kProbClamp, p));
        dp.at2(i, t) = static_cast<T>(-1.0 / (p * n));
    }
    return dp;
}

// ---------- batch normalization ----------

template <typename T>
struct BatchNormCache {
    Tensor<T> xhat;
    std::vector<T> mean, inv_std;
    std::int64_t m = 0;  // reduced element count per channel
};

// Normalizes over all axes but the channel axis (last). In train mode the
// batch statistics are used and the moving averages updated in place; a
// train-mode batch of one sample is a degenerate-batch error.
template <typename T>
Tensor<T> batchnorm_forward(const Tensor<T>& x, const Tensor<T>& gamma, const Tensor<T>& beta,
                            Tensor<T>& moving_mean, Tensor<T>& moving_var, T momentum, T eps, Mode mode,
                            BatchNormCache<T>* cache) {
    if (x.rank() != 4 && x.rank() != 2) throw ShapeError("batchnorm: expected rank-2 or rank-4 input");
    const int c = x.shape.back();
    if (beta.numel() != c || moving_mean.numel() != c || moving_var.numel() != c)
        throw ShapeError("batchnorm: parameter size mismatch");
    if (gamma.numel() != 0 && gamma.numel() != c) throw ShapeError("batchnorm: gamma size mismatch");
    const std::int64_t m = x.numel() / c;
    Tensor<T> y = zeros_like(x);

    std::vector<T> mean(static_cast<std::size_t>(c)), var(static_cast<std::size_t>(c));
    if (mode == Mode::Train) {
        if (x.dim(0) < 2) throw StateError("batchnorm: train mode needs a batch of at least 2 samples");
        for (std::int64_t i = 0; i < x.numel(); ++i) mean[static_cast<std::size_t>(i % c)] += x.at(i);
        for (int j = 0; j < c; ++j) mean[static_cast<std::size_t>(j)] /= static_cast<T>(m);
        for (std::int64_t i = 0; i < x.numel(); ++i) {
            const T d = x.at(i) - mean[static_cast<std::size_t>(i % c)];
            var[static_cast<std::size_t>(i % c)] += d * d;
        }
        for (int j = 0; j < c; ++j) var[static_cast<std::size_t>(j)] /= static_cast<T>(m);
        for (int j = 0; j < c; ++j) {
            moving_mean.data[j] = momentum * moving_mean.data[j] + (T(1) - momentum) * mean[static_cast<std::size_t>(j)];
            moving_var.data[j] = momentum * moving_var.data[j] + (T(1) - momentum) * var[static_cast<std::size_t>(j)];
        }
    } else {
        for (int j = 0; j < c; ++j) {
            mean[static_cast<std::size_t>(j)] = moving_mean.data[j];
            var[static_cast<std::size_t>(j)] = moving_var.data[j];
        }
    }

    std::vector<T> inv_std(static_cast<std::size_t>(c));
    for (int j = 0; j < c; ++j) inv_std[static_cast<std::size_t>(j)] = T(1) / std::sqrt(var[static_cast<std::size_t>(j)] + eps);

    Tensor<T> xhat = zeros_like(x);
    const bool scaled = gamma.numel() != 0;
    for (std::int64_t i = 0; i < x.numel(); ++i) {
        const std::size_t j = static_cast<std::size_t>(i % c);
        const T xh = (x.at(i) - mean[j]) * inv_std[j];
        xhat.at(i) = xh;
        y.at(i) = (scaled ? gamma.data[j] * xh : xh) + beta.data[j];
    }
    ensure_finite(y, "batchnorm");
    if (cache) {
        cache->xhat = std::move(xhat);
        cache->mean = std::move(mean);
        cache->inv_std = std::move(inv_std);
        cache->m = m;
    }
    return y;
}

template <typename T>
struct BatchNormGrads {
    Tensor<T> dx, dgamma, dbeta;
};

// Train-mode gradient through the batch statistics.
template <typename T>
BatchNormGrads<T> batchnorm_backward(const BatchNormCache<T>& cache, const Tensor<T>& gamma, const Tensor<T>& dy) {
    const int c = dy.shape.back();
    const std::int64_t m = cache.m;
    const bool scaled = gamma.numel() != 0;
    BatchNormGrads<T> g;
    g.dbeta = Tensor<T>({c});
    if (scaled) g.dgamma = Tensor<T>({c});
    std::vector<T> sum_dy(static_cast<std::size_t>(c)), sum_dy_xhat(static_cast<std::size_t>(c));
    for (std::int64_t i = 0; i < dy.numel(); ++i) {
        const std::size_t j = static_cast<std::size_t>(i % c);
        sum_dy[j] += dy.at(i);
        sum_dy_xhat[j] += dy.at(i) * cache.xhat.at(i);
    }
    for (int j = 0; j < c; ++j) {
        g.dbeta.data[j] = sum_dy[static_cast<std::size_t>(j)];
        if (scaled) g.dgamma.data[j] = sum_dy_xhat[static_cast<std::size_t>(j)];
    }
    g.dx = zeros_like(dy);
    for (std::int64_t i = 0; i < dy.numel(); ++i) {
        const std::size_t j = static_cast<std::size_t>(i % c);
        const T gj = scaled ? gamma.data[j] : T(1);
        g.dx.at(i) = gj * cache.inv_std[j] / static_cast<T>(m) *
                     (static_cast<T>(m) * dy.at(i) - sum_dy[j] - cache.xhat.at(i) * sum_dy_xhat[j]);
    }
    return g;
}

// With fixed (moving) statistics the layer is a per-channel affine map, so
// dx = dy * gamma / sqrt(var + eps).
template <typename T>
Tensor<T> batchnorm_backward_fixed_stats(const Tensor<T>& gamma, const Tensor<T>& moving_var, T eps,
                                         const Tensor<T>& dy) {
    const int c = dy.shape.back();
    const bool scaled = gamma.numel() != 0;
    Tensor<T> dx = dy;
    std::vector<T> k(static_cast<std::size_t>(c));
    for (int j = 0; j < c; ++j)
        k[static_cast<std::size_t>(j)] = (scaled ? gamma.data[j] : T(1)) / std::sqrt(moving_var.data[j] + eps);
    for (std::int64_t i = 0; i < dx.numel(); ++i) dx.at(i) *= k[static_cast<std::size_t>(i % c)];
    return dx;
}

// ---------- pooling ----------

template <typename T>
struct MaxPoolResult {
    Tensor<T> y;
    std::vector<std::int64_t> argmax;  // flat input index per output element
};

template <typename T>
MaxPoolResult<T> maxpool_forward(const Tensor<T>& x, int kh, int kw, int sh, int sw, Padding pad) {
    if (x.rank() != 4) throw ShapeError("maxpool: expected NHWC");
    const int n = x.dim(0), h = x.dim(1), w = x.dim(2), c = x.dim(3);
    const ConvDims dims = conv_output_dims(h, w, kh, kw, sh, sw, pad);
    MaxPoolResult<T> r;
    r.y = Tensor<T>({n, dims.oh, dims.ow, c});
    r.argmax.assign(static_cast<std::size_t>(r.y.numel()), -1);
    for (int nn = 0; nn < n; ++nn)
        for (int oh = 0; oh < dims.oh; ++oh)
            for (int ow = 0; ow < dims.ow; ++ow)
                for (int cc = 0; cc < c; ++cc) {
                    T best = -std::numeric_limits<T>::infinity();
                    std::int64_t best_idx = -1;
                    for (int dh = 0; dh < kh; ++dh) {
                        const int ih = oh * sh - dims.pad_top + dh;
                        if (ih < 0 || ih >= h) continue;
                        for (int dw = 0; dw < kw; ++dw) {
                            const int iw = ow * sw - dims.pad_left + dw;
                            if (iw < 0 || iw >= w) continue;
                            const std::int64_t idx = ((static_cast<std::int64_t>(nn) * h + ih) * w + iw) * c + cc;
                            if (x.at(idx) > best) {
                                best = x.at(idx);
                                best_idx = idx;
                            }
                        }
                    }
                    if (best_idx < 0) throw ShapeError("maxpool: window has no valid elements");
                    const std::int64_t out_idx = ((static_cast<std::int64_t>(nn) * dims.oh + oh) * dims.ow + ow) * c + cc;
                    r.y.at(out_idx) = best;
                    r.argmax[static_cast<std::size_t>(out_idx)] = best_idx;
                }
    return r;
}

template <typename T>
Tensor<T> maxpool_backward(const std::vector<std::int64_t>& argmax, const Tensor<T>& dy,
                           const std::vector<int>& input_shape) {
    Tensor<T> dx(input_shape);
    for (std::int64_t i = 0; i < dy.numel(); ++i) dx.at(argmax[static_cast<std::size_t>(i)]) += dy.at(i);
    return dx;
}

// Average pooling ignores padded positions (the divisor is the count of
// in-bounds taps), matching the reference framework behavior.
template <typename T>
Tensor<T> avgpool_forward(const Tensor<T>& x, int kh, int kw, int sh, int sw, Padding pad) {
    if (x.rank() != 4) throw ShapeError("avgpool: expected NHWC");
    const int n = x.dim(0), h = x.dim(1), w = x.dim(2), c = x.dim(3);
    const ConvDims dims = conv_output_dims(h, w, kh, kw, sh, sw, pad);
    Tensor<T> y({n, dims.oh, dims.ow, c});
    for (int nn = 0; nn < n; ++nn)
        for (int oh = 0; oh < dims.oh; ++oh)
            for (int ow = 0; ow < dims.ow; ++ow) {
                int count = 0;
                std::vector<T> acc(static_cast<std::size_t>(c), T(0));
                for (int dh = 0; dh < kh; ++dh) {
                    const int ih = oh * sh - dims.pad_top + dh;
                    if (ih < 0 || ih >= h) continue;
                    for (int dw = 0; dw < kw; ++dw) {
                        const int iw = ow * sw - dims.pad_left + dw;
                        if (iw < 0 || iw >= w) continue;
                        ++count;
                        const T* src = &x.at4(nn, ih, iw, 0);
                        for (int cc = 0; cc < c; ++cc) acc[static_cast<std::size_t>(cc)] += src[cc];
                    }
                }
                T* dst = &y.at4(nn, oh, ow, 0);
                for (int cc = 0; cc < c; ++cc) dst[cc] = acc[static_cast<std::size_t>(cc)] / static_cast<T>(count);
            }
    return y;
}

template <typename T>
Tensor<T> avgpool_backward(const Tensor<T>& dy, const std::vector<int>& input_shape, int kh, int kw, int sh, int sw,
                           Padding pad) {
    const int n = input_shape[0], h = input_shape[1], w = input_shape[2], c = input_shape[3];
    const ConvDims dims = conv_output_dims(h, w, kh, kw, sh, sw, pad);
    Tensor<T> dx(input_shape);
    for (int nn = 0; nn < n; ++nn)
        for (int oh = 0; oh < dims.oh; ++oh)
            for (int ow = 0; ow < dims.ow; ++ow) {
                int count = 0;
                for (int dh = 0; dh < kh; ++dh) {
                    const int ih = oh * sh - dims.pad_top + dh;
                    if (ih < 0 || ih >= h) continue;
                    for (int dw = 0; dw < kw; ++dw) {
                        const int iw = ow * sw - dims.pad_left + dw;
                        if (iw >= 0 && iw < w) ++count;
                    }
                }
                for (int dh = 0; dh < kh; ++dh) {
                    const int ih = oh * sh - dims.pad_top + dh;
                    if (ih < 0 || ih >= h) continue;
                    for (int dw = 0; dw < kw; ++dw) {
                        const int iw = ow * sw - dims.pad_left + dw;
                        if (iw < 0 || iw >= w) continue;
                        T* dst = &dx.at4(nn, ih, iw, 0);
                        const T* src = &dy.at4(nn, oh, ow, 0);
                        for (int cc = 0; cc < c; ++cc) dst[cc] += src[cc] / static_cast<T>(count);
                    }
                }
            }
    return dx;
}

template <typename T>
Tensor<T> global_avg_pool_forward(const Tensor<T>& x) {
    if (x.rank() != 4) throw ShapeError("global_avg_pool: expected NHWC");
    const int n = x.dim(0), h = x.dim(1), w = x.dim(2), c = x.dim(3);
    Tensor<T> y({n, c});
    for (int nn = 0; nn < n; ++nn)
        for (int ih = 0; ih < h; ++ih)
            for (int iw = 0; iw < w; ++iw) {
                const T* src = &x.at4(nn, ih, iw, 0);
                T* dst = &y.at2(nn, 0);
                for (int cc = 0; cc < c; ++cc) dst[cc] += src[cc];
            }
    const T inv = T(1) / static_cast<T>(static_cast<std::int64_t>(h) * w);
    for (T& v : y.data) v *= inv;
    return y;
}

template <typename T>
Tensor<T> global_avg_pool_backward(const Tensor<T>& dy, const std::vector<int>& input_shape) {
    const int n = input_shape[0], h = input_shape[1], w = input_shape[2], c = input_shape[3];
    Tensor<T> dx(input_shape);
    const T inv = T(1) / static_cast<T>(static_cast<std::int64_t>(h) * w);
    for (int nn = 0; nn < n; ++nn)
        for (int ih = 0; ih < h; ++ih)
            for (int iw = 0; iw < w; ++iw) {
                T* dst = &dx.at4(nn, ih, iw, 0);
                const T* src = &dy.at2(nn, 0);
                for (int cc = 0; cc < c; ++cc) dst[cc] = src[cc] * inv;
            }
    return dx;
}

// ---------- dropout(inverted) ----------

template <typename T>
Tensor<T> dropout_forward(const Tensor<T>& x, double rate, Rng& rng, Tensor<T>& mask) {
    if (rate < 0.0 || rate >= 1.0) throw ConfigError("dropout: rate must be in [0, 1)");
    mask = zeros_like(x);
    Tensor<T> y = zeros_like(x);
    const T scale = static_cast<T>(1.0 / (1.0 - rate));
    for (std::int64_t i = 0; i < x.numel(); ++i) {
        const bool keep = rate == 0.0 || !rng.bernoulli(rate);
        mask.at(i) = keep ? scale : T(0);
        y.at(i) = x.at(i) * mask.at(i);
    }
    return y;
}

template <typename T>
Tensor<T> dropout_backward(const Tensor<T>& mask, const Tensor<T>& dy) {
    if (!mask.same_shape(dy)) throw ShapeError("dropout_backward: shape mismatch");
    Tensor<T> dx = dy;
    for (std::int64_t i = 0; i < dx.numel(); ++i) dx.at(i) *= mask.at(i);
    return dx;
}

// ---------- concat over the channel axis ----------

template <typename T>
Tensor<T> concat_forward(const std::vector<const Tensor<T>*>& xs) {
    if (xs.empty()) throw ShapeError("concat: no inputs");
    const int rank = xs[0]->rank();
    int total_c = 0;
    for (const Tensor<T>* t : xs) {
        if (t->rank() != rank) throw ShapeError("concat: rank mismatch");
        for (int d = 0; d + 1 < rank; ++d)
            if (t->shape[static_cast<std::size_t>(d)] != xs[0]->shape[static_cast<std::size_t>(d)])
                throw ShapeError("concat: leading dimension mismatch " + t->shape_str() + " vs " + xs[0]->shape_str());
        total_c += t->shape.back();
    }
    std::vector<int> out_shape = xs[0]->shape;
    out_shape.back() = total_c;
    Tensor<T> y(out_shape);
    const std::int64_t rows = y.numel() / total_c;
    std::int64_t off = 0;
    for (const Tensor<T>* t : xs) {
        const int c = t->shape.back();
        for (std::int64_t r = 0; r < rows; ++r)
            std::copy(t->data.data() + r * c, t->data.data() + (r + 1) * c, y.data.data() + r * total_c + off);
        off += c;
    }
    return y;
}

template <typename T>
std::vector<Tensor<T>> concat_backward(const Tensor<T>& dy, const std::vector<std::vector<int>>& input_shapes) {
    std::vector<Tensor<T>> dxs;
    const int total_c = dy.shape.back();
    const std::int64_t rows = dy.numel() / total_c;
    std::int64_t off = 0;
    for (const auto& s : input_shapes) {
        Tensor<T> dx(s);
        const int c = s.back();
        for (std::int64_t r = 0; r < rows; ++r)
            std::copy(dy.data.data() + r * total_c + off, dy.data.data() + r * total_c + off + c,
                      dx.data.data() + r * c);
        off += c;
        dxs.push_back(std::move(dx));
    }
    return dxs;
}

// ---------- dense ----------

template <typename T>
Tensor<T> dense_forward(const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>& b) {
    if (x.rank() != 2 || w.rank() != 2 || x.dim(1) != w.dim(0))
        throw ShapeError("dense: incompatible shapes " + x.shape_str() + " x " + w.shape_str());
    Tensor<T> y = matmul(x, w);
    if (b.numel()) {
        if (b.numel() != w.dim(1)) throw ShapeError("dense: bias size mismatch");
        for (int i = 0; i < y.dim(0); ++i)
            for (int j = 0; j < y.dim(1); ++j) y.at2(i, j) += b.data[static_cast<std::size_t>(j)];
    }
    return y;
}

template <typename T>
struct DenseGrads {
    Tensor<T> dx, dw, db;
};

template <typename T>
DenseGrads<T> dense_backward(const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>& dy, bool has_bias,
                             bool need_dparams = true, bool need_dx = true) {
    DenseGrads<T> g;
    if (need_dparams) g.dw = matmul_tn(x, dy);
    if (need_dx) g.dx = matmul_nt(dy, w);
    if (has_bias && need_dparams) {
        g.db = Tensor<T>({w.dim(1)});
        for (int i = 0; i < dy.dim(0); ++i)
            for (int j = 0; j < dy.dim(1); ++j) g.db.data[static_cast<std::size_t>(j)] += dy.at2(i, j);
    }
    return g;
}

}  // namespace statecraft
