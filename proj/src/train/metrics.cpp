// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#include "emopool/train/metrics.hpp"

#include <cstdio>
#include <numeric>

#include "emopool/errors.hpp"

namespace emopool::train {

ConfusionMatrix ConfusionMatrix::from_predictions(std::span<const int> labels,
                                                  std::span<const int> preds,
                                                  std::size_t num_classes) {
    if (labels.size() != preds.size()) {
        throw DimensionError("confusion matrix: " + std::to_string(labels.size()) + " labels, " +
                             std::to_string(preds.size()) + " predictions");
    }
    ConfusionMatrix cm(num_classes);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        cm.add(labels[i], preds[i]);
    }
    return cm;
}

void ConfusionMatrix::add(int truth, int predicted, std::uint64_t n) {
    if (truth < 0 || predicted < 0 || static_cast<std::size_t>(truth) >= k_ ||
        static_cast<std::size_t>(predicted) >= k_) {
        throw DimensionError("confusion matrix: class index out of range");
    }
    counts_[static_cast<std::size_t>(truth) * k_ + static_cast<std::size_t>(predicted)] += n;
}

void ConfusionMatrix::merge(const ConfusionMatrix& other) {
    if (other.k_ != k_) {
        throw DimensionError("confusion matrix: cannot merge different class counts");
    }
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        counts_[i] += other.counts_[i];
    }
}

std::uint64_t ConfusionMatrix::total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

Metrics compute_metrics(const ConfusionMatrix& cm) {
    const std::size_t k = cm.num_classes();
    Metrics m;
    m.precision.assign(k, 0.0);
    m.recall.assign(k, 0.0);
    m.f1.assign(k, 0.0);
    m.confusion = cm;
    std::uint64_t correct = 0;
    for (std::size_t c = 0; c < k; ++c) {
        const std::uint64_t tp = cm(c, c);
        std::uint64_t predicted = 0;
        std::uint64_t actual = 0;
        for (std::size_t o = 0; o < k; ++o) {
            predicted += cm(o, c);
            actual += cm(c, o);
        }
        correct += tp;
        const double p = predicted == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(predicted);
        const double r = actual == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(actual);
        m.precision[c] = p;
        m.recall[c] = r;
        m.f1[c] = (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
    }
    double sum = 0.0;
    for (double f : m.f1) {
        sum += f;
    }
    m.macro_f1 = k == 0 ? 0.0 : sum / static_cast<double>(k);
    const auto total = cm.total();
    m.accuracy = total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
    return m;
}

double macro_f1(const ConfusionMatrix& cm) {
    return compute_metrics(cm).macro_f1;
}

std::string format_report(const Metrics& m, const std::vector<std::string>& class_names) {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "%-12s %10s %10s %10s %8s\n", "class", "precision", "recall",
                  "f1", "support");
    out += line;
    for (std::size_t c = 0; c < m.f1.size(); ++c) {
        std::uint64_t support = 0;
        for (std::size_t o = 0; o < m.f1.size(); ++o) {
            support += m.confusion(c, o);
        }
        const std::string name = c < class_names.size() ? class_names[c] : std::to_string(c);
        std::snprintf(line, sizeof line, "%-12s %10.4f %10.4f %10.4f %8llu\n", name.c_str(),
                      m.precision[c], m.recall[c], m.f1[c],
                      static_cast<unsigned long long>(support));
        out += line;
    }
    std::snprintf(line, sizeof line, "%-12s %10.6f\n%-12s %10.6f\n", "macro_f1", m.macro_f1,
                  "accuracy", m.accuracy);
    out += line;
    return out;
}

std::string confusion_csv(const ConfusionMatrix& cm, const std::vector<std::string>& class_names) {
    const std::size_t k = cm.num_classes();
    auto name = [&](std::size_t c) {
        return c < class_names.size() ? class_names[c] : std::to_string(c);
    };
    std::string out = "true\\pred";
    for (std::size_t c = 0; c < k; ++c) {
        out += "," + name(c);
    }
    out += "\n";
    for (std::size_t t = 0; t < k; ++t) {
        out += name(t);
        for (std::size_t p = 0; p < k; ++p) {
            out += "," + std::to_string(cm(t, p));
        }
        out += "\n";
    }
    return out;
}

}  // namespace emopool::train
