// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "emopool/model/classifier.hpp"
#include "emopool/model/pooling.hpp"

namespace emopool::model {

struct ModelShape {
    std::size_t embed_dim = 64;
    std::size_t hidden_width = 256;
    std::size_t hidden_layers = 2;
    std::size_t num_classes = 6;

    friend bool operator==(const ModelShape&, const ModelShape&) = default;
};

// Attention-pooling query plus classifier head.
template <class T>
struct ModelParams {
    std::vector<T> pool_query;
    ClassifierParams<T> classifier;

    ModelShape shape() const {
        return {pool_query.size(), classifier.hidden_width(), classifier.hidden.size(),
                classifier.num_classes()};
    }

    // Calls f(name, span, dims) for every trainable tensor in a fixed order.
    template <class F>
    void visit(F&& f) {
        visit_impl(*this, f);
    }
    template <class F>
    void visit(F&& f) const {
        visit_impl(*this, f);
    }

    std::size_t parameter_count() const {
        std::size_t n = 0;
        visit([&](const std::string&, auto data, const std::vector<std::uint32_t>&) {
            n += data.size();
        });
        return n;
    }

    template <class U>
    ModelParams<U> cast() const {
        ModelParams<U> out;
        out.pool_query.assign(pool_query.begin(), pool_query.end());
        out.classifier = cast_classifier<U>();
        return out;
    }

private:
    template <class U>
    ClassifierParams<U> cast_classifier() const {
        const auto& c = classifier;
        ClassifierParams<U> o;
        o.proj_weight = c.proj_weight.template cast<U>();
        o.proj_bias.assign(c.proj_bias.begin(), c.proj_bias.end());
        for (const auto& l : c.hidden) {
            o.hidden.push_back({l.weight.template cast<U>(),
                                std::vector<U>(l.bias.begin(), l.bias.end()),
                                std::vector<U>(l.ln_gain.begin(), l.ln_gain.end()),
                                std::vector<U>(l.ln_shift.begin(), l.ln_shift.end())});
        }
        o.out_weight = c.out_weight.template cast<U>();
        o.out_bias.assign(c.out_bias.begin(), c.out_bias.end());
        return o;
    }

    template <class Self, class F>
    static void visit_impl(Self& self, F& f) {
        using std::to_string;
        auto dims1 = [](std::size_t n) { return std::vector<std::uint32_t>{static_cast<std::uint32_t>(n)}; };
        auto dims2 = [](const auto& m) {
            return std::vector<std::uint32_t>{static_cast<std::uint32_t>(m.rows()),
                                              static_cast<std::uint32_t>(m.cols())};
        };
        auto& c = self.classifier;
        f(std::string("pool.query"), std::span(self.pool_query), dims1(self.pool_query.size()));
        f(std::string("proj.weight"), c.proj_weight.flat(), dims2(c.proj_weight));
        f(std::string("proj.bias"), std::span(c.proj_bias), dims1(c.proj_bias.size()));
        for (std::size_t i = 0; i < c.hidden.size(); ++i) {
            auto& l = c.hidden[i];
            const std::string p = "hidden." + to_string(i) + ".";
            f(p + "weight", l.weight.flat(), dims2(l.weight));
            f(p + "bias", std::span(l.bias), dims1(l.bias.size()));
            f(p + "ln_gain", std::span(l.ln_gain), dims1(l.ln_gain.size()));
            f(p + "ln_shift", std::span(l.ln_shift), dims1(l.ln_shift.size()));
        }
        f(std::string("out.weight"), c.out_weight.flat(), dims2(c.out_weight));
        f(std::string("out.bias"), std::span(c.out_bias), dims1(c.out_bias.size()));
    }
};

template <class T>
ModelParams<T> zeros_like(const ModelParams<T>& p) {
    return {std::vector<T>(p.pool_query.size(), T{0}), zeros_like(p.classifier)};
}

// Pooling query from stream "init-pooling", classifier from "init-classifier".
template <class T>
ModelParams<T> init_model(const ModelShape& shape, std::uint64_t seed) {
    Rng pool_rng = Rng::stream(seed, "init-pooling");
    Rng cls_rng = Rng::stream(seed, "init-classifier");
    return {init_pooling<T>(shape.embed_dim, pool_rng),
            init_classifier<T>(shape.embed_dim, shape.hidden_width, shape.hidden_layers,
                               shape.num_classes, cls_rng)};
}

template <class T>
struct ForwardCache {
    PoolingResult<T> pooling;
    ClassifierCache<T> classifier;
};

// Fused hidden states (T x E) -> logits (K).
template <class T>
std::vector<T> model_forward(const ModelParams<T>& params, const Tensor2D<T>& hidden_states,
                             double dropout_p, Mode mode, Rng& rng,
                             ForwardCache<T>* cache = nullptr) {
    auto pooled = attn_pool_forward<T>(hidden_states, params.pool_query);
    auto logits = classifier_forward<T>(pooled.c, params.classifier, dropout_p, mode, rng,
                                        cache != nullptr ? &cache->classifier : nullptr);
    if (cache != nullptr) {
        cache->pooling = std::move(pooled);
    }
    return logits;
}

// Accumulates parameter gradients into `grads`; returns d(loss)/d(hidden states).
template <class T>
Tensor2D<T> model_backward(const ModelParams<T>& params, const Tensor2D<T>& hidden_states,
                           const ForwardCache<T>& cache, std::span<const T> dlogits,
                           ModelParams<T>& grads) {
    auto dc = classifier_backward<T>(params.classifier, cache.classifier, dlogits, grads.classifier);
    auto pg = attn_pool_backward<T>(hidden_states, params.pool_query, cache.pooling.w, dc);
    detail::accumulate<T>(grads.pool_query, pg.du);
    return std::move(pg.dh);
}

// Argmax, ties resolved toward the lower class index.
template <class T>
int predict(std::span<const T> logits) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < logits.size(); ++i) {
        if (logits[i] > logits[best]) {
            best = i;
        }
    }
    return static_cast<int>(best);
}

}  // namespace emopool::model
