// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#include "emopool/model/loss.hpp"

namespace emopool::model {

BatchLoss batch_weighted_cross_entropy(const std::vector<std::vector<double>>& logits,
                                       std::span<const int> labels,
                                       std::span<const double> class_weights) {
    if (logits.size() != labels.size() || logits.empty()) {
        throw DimensionError("batch cross entropy: " + std::to_string(logits.size()) +
                             " logit rows for " + std::to_string(labels.size()) + " labels");
    }
    BatchLoss out;
    double total_weight = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        auto s = weighted_cross_entropy<double>(logits[i], labels[i], class_weights);
        out.loss += s.loss;
        total_weight += s.weight;
        out.dlogits.push_back(std::move(s.dlogits));
    }
    out.loss /= total_weight;
    for (auto& row : out.dlogits) {
        for (auto& v : row) {
            v /= total_weight;
        }
    }
    return out;
}

std::vector<double> compute_class_weights(std::span<const std::size_t> counts) {
    if (counts.empty()) {
        throw ConfigError("class weights need at least one class");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] == 0) {
            throw TrainingError("class " + std::to_string(k) + " is absent from the training split");
        }
        total += static_cast<double>(counts[k]);
    }
    const double num_classes = static_cast<double>(counts.size());
    std::vector<double> w(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) {
        w[k] = total / (num_classes * static_cast<double>(counts[k]));
    }
    return w;
}

}  // namespace emopool::model
