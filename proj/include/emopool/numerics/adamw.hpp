// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "emopool/errors.hpp"

namespace emopool {

struct AdamWHyper {
    double lr = 5e-5;
    double weight_decay = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// Moments for one parameter tensor.
template <class T>
struct AdamWState {
    std::vector<T> m;
    std::vector<T> v;
    std::uint64_t t = 0;
    AdamWHyper hyper;

    AdamWState() = default;
    AdamWState(std::size_t n, AdamWHyper h) : m(n, T{0}), v(n, T{0}), hyper(h) {}
};

// Bias-corrected Adam with decoupled weight decay:
//   param <- param - lr * m_hat / (sqrt(v_hat) + eps) - lr * wd * param
// Throws TrainingError on a non-finite gradient; callers add batch context.
template <class T>
void adamw_step(std::span<T> param, std::span<const T> grad, AdamWState<T>& state) {
    if (param.size() != grad.size() || state.m.size() != param.size() ||
        state.v.size() != param.size()) {
        throw DimensionError("adamw: param " + std::to_string(param.size()) + ", grad " +
                             std::to_string(grad.size()) + ", state " +
                             std::to_string(state.m.size()));
    }
    for (std::size_t i = 0; i < grad.size(); ++i) {
        if (!std::isfinite(grad[i])) {
            throw TrainingError("non-finite gradient at element " + std::to_string(i));
        }
    }
    const AdamWHyper& h = state.hyper;
    state.t += 1;
    const double bc1 = 1.0 - std::pow(h.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(h.beta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < param.size(); ++i) {
        const double g = grad[i];
        const double m = h.beta1 * state.m[i] + (1.0 - h.beta1) * g;
        const double v = h.beta2 * state.v[i] + (1.0 - h.beta2) * g * g;
        state.m[i] = static_cast<T>(m);
        state.v[i] = static_cast<T>(v);
        const double m_hat = m / bc1;
        const double v_hat = v / bc2;
        const double p = param[i];
        param[i] = static_cast<T>(p - h.lr * (m_hat / (std::sqrt(v_hat) + h.eps)) -
                                  h.lr * h.weight_decay * p);
    }
}

}  // namespace emopool
