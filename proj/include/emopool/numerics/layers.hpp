// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "emopool/errors.hpp"
#include "emopool/numerics/rng.hpp"
#include "emopool/numerics/tensor.hpp"

namespace emopool {

enum class Mode { train, eval };

// ----------------------------------------------------------------------------
// Linear: y = x W + b, rowwise.
// ----------------------------------------------------------------------------

template <class T>
struct LinearGrads {
    Tensor2D<T> dx;
    Tensor2D<T> dW;
    std::vector<T> db;
};

template <class T>
Tensor2D<T> linear_forward(const Tensor2D<T>& x, const Tensor2D<T>& W, std::span<const T> b) {
    if (x.cols() != W.rows() || b.size() != W.cols()) {
        throw DimensionError("linear: x " + shape_string(x.rows(), x.cols()) + ", W " +
                             shape_string(W.rows(), W.cols()) + ", b " +
                             std::to_string(b.size()));
    }
    Tensor2D<T> y(x.rows(), W.cols());
    for (std::size_t n = 0; n < x.rows(); ++n) {
        auto out = y.row(n);
        std::copy(b.begin(), b.end(), out.begin());
        for (std::size_t k = 0; k < x.cols(); ++k) {
            const T xk = x(n, k);
            if (xk == T{0}) {
                continue;
            }
            auto wrow = W.row(k);
            for (std::size_t j = 0; j < out.size(); ++j) {
                out[j] += xk * wrow[j];
            }
        }
    }
    return y;
}

template <class T>
LinearGrads<T> linear_backward(const Tensor2D<T>& x, const Tensor2D<T>& W, const Tensor2D<T>& dy) {
    if (x.cols() != W.rows() || dy.cols() != W.cols() || dy.rows() != x.rows()) {
        throw DimensionError("linear backward: x " + shape_string(x.rows(), x.cols()) + ", W " +
                             shape_string(W.rows(), W.cols()) + ", dy " +
                             shape_string(dy.rows(), dy.cols()));
    }
    LinearGrads<T> g{Tensor2D<T>(x.rows(), x.cols()), Tensor2D<T>(W.rows(), W.cols()),
                     std::vector<T>(W.cols(), T{0})};
    for (std::size_t n = 0; n < x.rows(); ++n) {
        auto dyr = dy.row(n);
        for (std::size_t j = 0; j < dyr.size(); ++j) {
            g.db[j] += dyr[j];
        }
        for (std::size_t k = 0; k < x.cols(); ++k) {
            auto wrow = W.row(k);
            auto dwrow = g.dW.row(k);
            const T xk = x(n, k);
            T acc{0};
            for (std::size_t j = 0; j < dyr.size(); ++j) {
                acc += dyr[j] * wrow[j];
                dwrow[j] += xk * dyr[j];
            }
            g.dx(n, k) = acc;
        }
    }
    return g;
}

// ----------------------------------------------------------------------------
// Layer normalization over a single vector (population variance).
// ----------------------------------------------------------------------------

inline constexpr double kLayerNormEps = 1e-5;

template <class T>
struct LayerNormCache {
    std::vector<T> xhat;
    T inv_std{};
};

template <class T>
struct LayerNormGrads {
    std::vector<T> dx;
    std::vector<T> dgamma;
    std::vector<T> dbeta;
};

template <class T>
std::vector<T> layer_norm_forward(std::span<const T> x, std::span<const T> gamma,
                                  std::span<const T> beta, LayerNormCache<T>* cache = nullptr,
                                  T eps = static_cast<T>(kLayerNormEps)) {
    const std::size_t d = x.size();
    if (d == 0 || gamma.size() != d || beta.size() != d) {
        throw DimensionError("layer norm: x " + std::to_string(d) + ", gamma " +
                             std::to_string(gamma.size()) + ", beta " +
                             std::to_string(beta.size()));
    }
    // Mean accumulated relative to x[0], so a constant row centers to exact zeros.
    T shift{0};
    for (T v : x) {
        shift += v - x[0];
    }
    const T mean = x[0] + shift / static_cast<T>(d);
    T var{0};
    for (T v : x) {
        var += (v - mean) * (v - mean);
    }
    var /= static_cast<T>(d);
    const T inv_std = T{1} / std::sqrt(var + eps);

    std::vector<T> y(d);
    std::vector<T> xhat(d);
    for (std::size_t i = 0; i < d; ++i) {
        xhat[i] = (x[i] - mean) * inv_std;
        y[i] = gamma[i] * xhat[i] + beta[i];
    }
    if (cache != nullptr) {
        cache->xhat = std::move(xhat);
        cache->inv_std = inv_std;
    }
    return y;
}

template <class T>
LayerNormGrads<T> layer_norm_backward(std::span<const T> dy, std::span<const T> gamma,
                                      const LayerNormCache<T>& cache) {
    const std::size_t d = dy.size();
    LayerNormGrads<T> g{std::vector<T>(d), std::vector<T>(d), std::vector<T>(dy.begin(), dy.end())};
    // dx = inv_std/D * (D*gxhat - sum(gxhat) - xhat*sum(gxhat*xhat)), gxhat = dy*gamma
    T sum_g{0};
    T sum_gx{0};
    std::vector<T> gxhat(d);
    for (std::size_t i = 0; i < d; ++i) {
        g.dgamma[i] = dy[i] * cache.xhat[i];
        gxhat[i] = dy[i] * gamma[i];
        sum_g += gxhat[i];
        sum_gx += gxhat[i] * cache.xhat[i];
    }
    const T n = static_cast<T>(d);
    for (std::size_t i = 0; i < d; ++i) {
        g.dx[i] = cache.inv_std / n * (n * gxhat[i] - sum_g - cache.xhat[i] * sum_gx);
    }
    return g;
}

// ----------------------------------------------------------------------------
// GELU, exact erf form: x * Phi(x).
// ----------------------------------------------------------------------------

template <class T>
T gelu(T x) noexcept {
    return T{0.5} * x * std::erfc(-x / std::numbers::sqrt2_v<T>);
}

template <class T>
T gelu_grad(T x) noexcept {
    // erfc keeps the left tail accurate where 1 + erf would cancel.
    const T cdf = T{0.5} * std::erfc(-x / std::numbers::sqrt2_v<T>);
    const T pdf = std::exp(T{-0.5} * x * x) * std::numbers::inv_sqrtpi_v<T> /
                  std::numbers::sqrt2_v<T>;
    return cdf + x * pdf;
}

template <class T>
std::vector<T> gelu(std::span<const T> x) {
    std::vector<T> y(x.size());
    std::transform(x.begin(), x.end(), y.begin(), [](T v) { return gelu(v); });
    return y;
}

template <class T>
std::vector<T> gelu_backward(std::span<const T> x, std::span<const T> dy) {
    std::vector<T> dx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        dx[i] = dy[i] * gelu_grad(x[i]);
    }
    return dx;
}

// ----------------------------------------------------------------------------
// Inverted dropout. An empty mask means the pass was the identity.
// ----------------------------------------------------------------------------

template <class T>
struct DropoutResult {
    std::vector<T> y;
    std::vector<T> mask;
};

inline void validate_dropout(double p) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw ConfigError("dropout probability must be in [0, 1), got " + std::to_string(p));
    }
}

template <class T>
DropoutResult<T> dropout_forward(std::span<const T> x, double p, Mode mode, Rng& rng) {
    validate_dropout(p);
    DropoutResult<T> r{std::vector<T>(x.begin(), x.end()), {}};
    if (mode == Mode::eval || p == 0.0) {
        return r;
    }
    const T keep_scale = static_cast<T>(1.0 / (1.0 - p));
    r.mask.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        r.mask[i] = rng.bernoulli(p) ? T{0} : keep_scale;
        r.y[i] *= r.mask[i];
    }
    return r;
}

template <class T>
std::vector<T> dropout_backward(std::span<const T> dy, std::span<const T> mask) {
    std::vector<T> dx(dy.begin(), dy.end());
    if (!mask.empty()) {
        for (std::size_t i = 0; i < dx.size(); ++i) {
            dx[i] *= mask[i];
        }
    }
    return dx;
}

// ----------------------------------------------------------------------------
// Softmax (max-subtracted).
// ----------------------------------------------------------------------------

template <class T>
std::vector<T> softmax(std::span<const T> x) {
    std::vector<T> y(x.size());
    if (x.empty()) {
        return y;
    }
    const T mx = *std::max_element(x.begin(), x.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] = std::exp(x[i] - mx);
        sum += y[i];
    }
    for (T& v : y) {
        v = static_cast<T>(v / sum);
    }
    return y;
}

// Given y = softmax(x) and upstream dy, returns dx = y * (dy - <dy, y>).
template <class T>
std::vector<T> softmax_backward(std::span<const T> y, std::span<const T> dy) {
    T dot{0};
    for (std::size_t i = 0; i < y.size(); ++i) {
        dot += dy[i] * y[i];
    }
    std::vector<T> dx(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        dx[i] = y[i] * (dy[i] - dot);
    }
    return dx;
}

}  // namespace emopool
