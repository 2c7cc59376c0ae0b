// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <span>
#include <vector>

#include "emopool/model/pooling.hpp"
#include "emopool/numerics/layers.hpp"
#include "emopool/numerics/rng.hpp"
#include "emopool/numerics/tensor.hpp"

namespace emopool::model {

template <class T>
struct HiddenLayer {
    Tensor2D<T> weight;  // H x H
    std::vector<T> bias;
    std::vector<T> ln_gain;
    std::vector<T> ln_shift;
};

// projection (E -> H), L hidden blocks, output (H -> K).
template <class T>
struct ClassifierParams {
    Tensor2D<T> proj_weight;
    std::vector<T> proj_bias;
    std::vector<HiddenLayer<T>> hidden;
    Tensor2D<T> out_weight;
    std::vector<T> out_bias;

    std::size_t input_dim() const noexcept { return proj_weight.rows(); }
    std::size_t hidden_width() const noexcept { return proj_weight.cols(); }
    std::size_t num_classes() const noexcept { return out_weight.cols(); }

    void validate() const {
        const std::size_t h = hidden_width();
        bool ok = proj_bias.size() == h && out_weight.rows() == h &&
                  out_bias.size() == out_weight.cols() && input_dim() > 0 && h > 0 &&
                  num_classes() > 0;
        for (const auto& layer : hidden) {
            ok = ok && layer.weight.rows() == h && layer.weight.cols() == h &&
                 layer.bias.size() == h && layer.ln_gain.size() == h && layer.ln_shift.size() == h;
        }
        if (!ok) {
            throw DimensionError("classifier parameter shapes do not chain");
        }
    }
};

template <class T>
Tensor2D<T> xavier_matrix(std::size_t fan_in, std::size_t fan_out, Rng& rng) {
    const double a = xavier_bound(fan_in, fan_out);
    Tensor2D<T> m(fan_in, fan_out);
    for (auto& v : m.flat()) {
        v = static_cast<T>(rng.uniform(-a, a));
    }
    return m;
}

// Xavier-uniform matrices, zero biases, unit gains, zero shifts.
template <class T>
ClassifierParams<T> init_classifier(std::size_t input_dim, std::size_t hidden_width,
                                    std::size_t hidden_layers, std::size_t num_classes, Rng& rng) {
    ClassifierParams<T> p;
    p.proj_weight = xavier_matrix<T>(input_dim, hidden_width, rng);
    p.proj_bias.assign(hidden_width, T{0});
    for (std::size_t i = 0; i < hidden_layers; ++i) {
        p.hidden.push_back({xavier_matrix<T>(hidden_width, hidden_width, rng),
                            std::vector<T>(hidden_width, T{0}), std::vector<T>(hidden_width, T{1}),
                            std::vector<T>(hidden_width, T{0})});
    }
    p.out_weight = xavier_matrix<T>(hidden_width, num_classes, rng);
    p.out_bias.assign(num_classes, T{0});
    p.validate();
    return p;
}

template <class T>
struct HiddenCache {
    Tensor2D<T> input;          // 1 x H, fed to the linear layer
    std::vector<T> dropout_mask;
    LayerNormCache<T> ln;
    std::vector<T> ln_out;      // GELU input
};

template <class T>
struct ClassifierCache {
    Tensor2D<T> input;          // 1 x E pooled vector
    std::vector<HiddenCache<T>> hidden;
    Tensor2D<T> last;           // 1 x H, fed to the output layer
};

// projection -> L x [linear -> dropout -> layer norm -> GELU] -> output linear.
// Returns logits; softmax is applied only when probabilities are needed.
template <class T>
std::vector<T> classifier_forward(std::span<const T> c, const ClassifierParams<T>& params,
                                  double dropout_p, Mode mode, Rng& rng,
                                  ClassifierCache<T>* cache = nullptr) {
    if (c.size() != params.input_dim()) {
        throw DimensionError("classifier expects input dim " + std::to_string(params.input_dim()) +
                             ", got " + std::to_string(c.size()));
    }
    validate_dropout(dropout_p);
    Tensor2D<T> x(1, c.size(), std::vector<T>(c.begin(), c.end()));
    if (cache != nullptr) {
        cache->input = x;
        cache->hidden.clear();
    }
    x = linear_forward<T>(x, params.proj_weight, params.proj_bias);
    for (const auto& layer : params.hidden) {
        HiddenCache<T> hc;
        hc.input = x;
        auto pre = linear_forward<T>(x, layer.weight, layer.bias);
        auto dropped = dropout_forward<T>(pre.flat(), dropout_p, mode, rng);
        hc.ln_out = layer_norm_forward<T>(dropped.y, layer.ln_gain, layer.ln_shift, &hc.ln);
        x = Tensor2D<T>::row_vector(gelu<T>(hc.ln_out));
        hc.dropout_mask = std::move(dropped.mask);
        if (cache != nullptr) {
            cache->hidden.push_back(std::move(hc));
        }
    }
    if (cache != nullptr) {
        cache->last = x;
    }
    auto logits = linear_forward<T>(x, params.out_weight, params.out_bias);
    return logits.values();
}

template <class T>
ClassifierParams<T> zeros_like(const ClassifierParams<T>& p) {
    ClassifierParams<T> z;
    z.proj_weight = Tensor2D<T>(p.proj_weight.rows(), p.proj_weight.cols());
    z.proj_bias.assign(p.proj_bias.size(), T{0});
    for (const auto& layer : p.hidden) {
        const std::size_t h = layer.bias.size();
        z.hidden.push_back({Tensor2D<T>(h, h), std::vector<T>(h, T{0}), std::vector<T>(h, T{0}),
                            std::vector<T>(h, T{0})});
    }
    z.out_weight = Tensor2D<T>(p.out_weight.rows(), p.out_weight.cols());
    z.out_bias.assign(p.out_bias.size(), T{0});
    return z;
}

namespace detail {

template <class T>
void accumulate(std::span<T> dst, std::span<const T> src) {
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] += src[i];
    }
}

}  // namespace detail

// Adds parameter gradients into `grads` and returns d(loss)/d(input).
template <class T>
std::vector<T> classifier_backward(const ClassifierParams<T>& params, const ClassifierCache<T>& cache,
                                   std::span<const T> dlogits, ClassifierParams<T>& grads) {
    Tensor2D<T> dy(1, dlogits.size(), std::vector<T>(dlogits.begin(), dlogits.end()));
    auto g = linear_backward<T>(cache.last, params.out_weight, dy);
    detail::accumulate<T>(grads.out_weight.flat(), g.dW.flat());
    detail::accumulate<T>(grads.out_bias, g.db);
    Tensor2D<T> dx = std::move(g.dx);

    for (std::size_t i = params.hidden.size(); i-- > 0;) {
        const auto& layer = params.hidden[i];
        const auto& hc = cache.hidden[i];
        auto& gl = grads.hidden[i];
        auto dln_out = gelu_backward<T>(hc.ln_out, dx.flat());
        auto ln = layer_norm_backward<T>(dln_out, layer.ln_gain, hc.ln);
        detail::accumulate<T>(gl.ln_gain, ln.dgamma);
        detail::accumulate<T>(gl.ln_shift, ln.dbeta);
        auto dpre = dropout_backward<T>(ln.dx, hc.dropout_mask);
        auto lg = linear_backward<T>(hc.input, layer.weight, Tensor2D<T>::row_vector(std::move(dpre)));
        detail::accumulate<T>(gl.weight.flat(), lg.dW.flat());
        detail::accumulate<T>(gl.bias, lg.db);
        dx = std::move(lg.dx);
    }

    auto pg = linear_backward<T>(cache.input, params.proj_weight, dx);
    detail::accumulate<T>(grads.proj_weight.flat(), pg.dW.flat());
    detail::accumulate<T>(grads.proj_bias, pg.db);
    return pg.dx.values();
}

}  // namespace emopool::model
