// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "emopool/errors.hpp"

namespace emopool::model {

// Unnormalized contribution of one sample:
//   loss    = weight[label] * -log softmax(logits)[label]
//   dlogits = weight[label] * (softmax(logits) - onehot(label))
// A batch divides both by the sum of the participating sample weights.
template <class T>
struct SampleLoss {
    double loss = 0.0;
    double weight = 0.0;
    std::vector<T> dlogits;
};

template <class T>
SampleLoss<T> weighted_cross_entropy(std::span<const T> logits, int label,
                                     std::span<const double> class_weights) {
    const std::size_t k = logits.size();
    if (label < 0 || static_cast<std::size_t>(label) >= k || class_weights.size() != k) {
        throw DimensionError("cross entropy: label " + std::to_string(label) + " with " +
                             std::to_string(k) + " logits and " +
                             std::to_string(class_weights.size()) + " class weights");
    }
    double mx = logits[0];
    for (T v : logits) {
        mx = std::max<double>(mx, v);
    }
    std::vector<double> e(k);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        e[i] = std::exp(static_cast<double>(logits[i]) - mx);
        sum += e[i];
    }
    const auto y = static_cast<std::size_t>(label);
    const double weight = class_weights[y];
    SampleLoss<T> r;
    r.weight = weight;
    r.loss = weight * (std::log(sum) - (static_cast<double>(logits[y]) - mx));
    r.dlogits.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double p = e[i] / sum;
        r.dlogits[i] = static_cast<T>(weight * (p - (i == y ? 1.0 : 0.0)));
    }
    return r;
}

struct BatchLoss {
    double loss = 0.0;
    std::vector<std::vector<double>> dlogits;
};

// Weighted mean over a batch: sum_i loss_i / sum_i weight[label_i].
BatchLoss batch_weighted_cross_entropy(const std::vector<std::vector<double>>& logits,
                                       std::span<const int> labels,
                                       std::span<const double> class_weights);

// Balanced inverse-frequency weights w_k = N / (K n_k).
std::vector<double> compute_class_weights(std::span<const std::size_t> counts);

}  // namespace emopool::model
