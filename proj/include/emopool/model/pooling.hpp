// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "emopool/errors.hpp"
#include "emopool/numerics/layers.hpp"
#include "emopool/numerics/rng.hpp"
#include "emopool/numerics/tensor.hpp"

namespace emopool::model {

// Glorot/Xavier uniform bound sqrt(6 / (fan_in + fan_out)).
inline double xavier_bound(std::size_t fan_in, std::size_t fan_out) {
    return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

// The pooling query u in R^E, treated as an E x 1 matrix for the fan rule.
template <class T>
std::vector<T> init_pooling(std::size_t embed_dim, Rng& rng) {
    if (embed_dim == 0) {
        throw DimensionError("pooling dimension must be positive");
    }
    const double a = xavier_bound(embed_dim, 1);
    std::vector<T> u(embed_dim);
    for (auto& v : u) {
        v = static_cast<T>(rng.uniform(-a, a));
    }
    return u;
}

template <class T>
struct PoolingResult {
    std::vector<T> c;  // pooled vector, length E
    std::vector<T> w;  // attention weights, length T
};

template <class T>
struct PoolingGrads {
    Tensor2D<T> dh;
    std::vector<T> du;
};

// s_t = <h_t, u> / sqrt(E);  w = softmax(s);  c = sum_t w_t h_t
template <class T>
PoolingResult<T> attn_pool_forward(const Tensor2D<T>& h, std::span<const T> u) {
    if (h.rows() == 0) {
        throw DimensionError("attention pooling needs at least one frame");
    }
    if (h.cols() != u.size()) {
        throw DimensionError("attention pooling: frames have dim " + std::to_string(h.cols()) +
                             ", query has dim " + std::to_string(u.size()));
    }
    const std::size_t frames = h.rows();
    const std::size_t dim = h.cols();
    // Sums run in double so float models stay order-independent to rounding.
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    std::vector<T> scores(frames);
    for (std::size_t t = 0; t < frames; ++t) {
        auto ht = h.row(t);
        double s = 0.0;
        for (std::size_t e = 0; e < dim; ++e) {
            s += static_cast<double>(ht[e]) * u[e];
        }
        scores[t] = static_cast<T>(s * scale);
    }
    PoolingResult<T> r{std::vector<T>(dim, T{0}), softmax<T>(scores)};
    std::vector<double> acc(dim, 0.0);
    for (std::size_t t = 0; t < frames; ++t) {
        auto ht = h.row(t);
        for (std::size_t e = 0; e < dim; ++e) {
            acc[e] += static_cast<double>(r.w[t]) * ht[e];
        }
    }
    std::transform(acc.begin(), acc.end(), r.c.begin(), [](double v) { return static_cast<T>(v); });
    return r;
}

// With a_t = <dc, h_t> and ds_t = w_t (a_t - sum_i w_i a_i):
//   dh_t = w_t dc + ds_t u / sqrt(E)
//   du   = sum_t ds_t h_t / sqrt(E)
template <class T>
PoolingGrads<T> attn_pool_backward(const Tensor2D<T>& h, std::span<const T> u,
                                   std::span<const T> w, std::span<const T> dc) {
    const std::size_t frames = h.rows();
    const std::size_t dim = h.cols();
    if (w.size() != frames || u.size() != dim || dc.size() != dim) {
        throw DimensionError("attention pooling backward: inconsistent shapes");
    }
    const T scale = T{1} / std::sqrt(static_cast<T>(dim));
    std::vector<T> a(frames);
    for (std::size_t t = 0; t < frames; ++t) {
        auto ht = h.row(t);
        T acc{0};
        for (std::size_t e = 0; e < dim; ++e) {
            acc += dc[e] * ht[e];
        }
        a[t] = acc;
    }
    const auto ds = softmax_backward<T>(w, a);

    PoolingGrads<T> g{Tensor2D<T>(frames, dim), std::vector<T>(dim, T{0})};
    for (std::size_t t = 0; t < frames; ++t) {
        auto ht = h.row(t);
        auto dht = g.dh.row(t);
        const T coupling = ds[t] * scale;
        for (std::size_t e = 0; e < dim; ++e) {
            dht[e] = w[t] * dc[e] + coupling * u[e];
            g.du[e] += coupling * ht[e];
        }
    }
    return g;
}

}  // namespace emopool::model
