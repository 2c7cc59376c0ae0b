// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace emopool::train {

// K x K counts, entry (true class, predicted class).
class ConfusionMatrix {
public:
    explicit ConfusionMatrix(std::size_t num_classes = 0)
        : k_(num_classes), counts_(num_classes * num_classes, 0) {}

    static ConfusionMatrix from_predictions(std::span<const int> labels, std::span<const int> preds,
                                            std::size_t num_classes);

    void add(int truth, int predicted, std::uint64_t n = 1);
    void merge(const ConfusionMatrix& other);

    std::uint64_t operator()(std::size_t truth, std::size_t predicted) const {
        return counts_[truth * k_ + predicted];
    }
    std::size_t num_classes() const noexcept { return k_; }
    std::uint64_t total() const noexcept;

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

private:
    std::size_t k_;
    std::vector<std::uint64_t> counts_;
};

struct Metrics {
    std::vector<double> precision;
    std::vector<double> recall;
    std::vector<double> f1;
    double macro_f1 = 0.0;
    double accuracy = 0.0;
    ConfusionMatrix confusion;
};

// Per-class scores with every 0/0 defined as 0; macro F1 is the unweighted
// mean of the per-class F1 values.
Metrics compute_metrics(const ConfusionMatrix& cm);
double macro_f1(const ConfusionMatrix& cm);

// Fixed-width text table: per-class precision/recall/F1, then macro F1 and accuracy.
std::string format_report(const Metrics& m, const std::vector<std::string>& class_names);

// Header row "true\pred,<names...>", then one row per true class.
std::string confusion_csv(const ConfusionMatrix& cm, const std::vector<std::string>& class_names);

}  // namespace emopool::train
