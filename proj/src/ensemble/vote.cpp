// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#include "emopool/ensemble/vote.hpp"

#include <algorithm>
#include <map>

#include "emopool/errors.hpp"
#include "emopool/train/trainer.hpp"

namespace emopool::ensemble {

namespace {

void validate_count(std::size_t m) {
    if (m < 3 || m % 2 == 0) {
        throw ConfigError("hard voting needs an odd number of at least 3 members, got " +
                          std::to_string(m));
    }
}

int vote_with_fallback(std::span<const int> predictions, std::size_t fallback_member) {
    std::map<int, std::size_t> votes;
    for (int p : predictions) {
        votes[p] += 1;
    }
    int leader = -1;
    std::size_t top = 0;
    bool tied = false;
    for (const auto& [cls, n] : votes) {
        if (n > top) {
            leader = cls;
            top = n;
            tied = false;
        } else if (n == top) {
            tied = true;
        }
    }
    return tied ? predictions[fallback_member] : leader;
}

bool same_parameters(const model::Checkpoint& a, const model::Checkpoint& b) {
    if (!(a.params.shape() == b.params.shape())) {
        return false;
    }
    std::vector<std::span<const float>> lhs;
    a.params.visit([&](const std::string&, std::span<const float> d, const auto&) { lhs.push_back(d); });
    std::size_t i = 0;
    bool equal = true;
    b.params.visit([&](const std::string&, std::span<const float> d, const auto&) {
        equal = equal && std::equal(d.begin(), d.end(), lhs[i].begin());
        ++i;
    });
    return equal;
}

}  // namespace

void validate_members(std::span<const double> member_val_f1) {
    const std::size_t m = member_val_f1.size();
    validate_count(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(member_val_f1[i] >= 0.0 && member_val_f1[i] <= 1.0)) {
            throw ConfigError("member " + std::to_string(i) + " has validation F1 outside [0, 1]");
        }
        for (std::size_t j = i + 1; j < m; ++j) {
            if (member_val_f1[i] == member_val_f1[j]) {
                throw ConfigError("members " + std::to_string(i) + " and " + std::to_string(j) +
                                  " share validation F1 " + std::to_string(member_val_f1[i]) +
                                  "; the tie-break would be ambiguous");
            }
        }
    }
}

int hard_vote(std::span<const int> predictions, std::span<const double> member_val_f1) {
    validate_members(member_val_f1);
    if (predictions.size() != member_val_f1.size()) {
        throw DimensionError("hard vote: " + std::to_string(predictions.size()) +
                             " predictions for " + std::to_string(member_val_f1.size()) +
                             " members");
    }
    const auto best = std::max_element(member_val_f1.begin(), member_val_f1.end());
    return vote_with_fallback(predictions, static_cast<std::size_t>(best - member_val_f1.begin()));
}

EnsembleReport ensemble_evaluate(const std::vector<EnsembleMember>& members,
                                 const dataio::Dataset& data, unsigned workers) {
    validate_count(members.size());
    // Equal validation scores are tolerated only between bit-identical
    // models: they always vote alike, so the tie-break stays well defined.
    for (std::size_t i = 0; i < members.size(); ++i) {
        const double f = members[i].val_macro_f1();
        if (!(f >= 0.0 && f <= 1.0)) {
            throw ConfigError("member '" + members[i].name + "' has validation F1 outside [0, 1]");
        }
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            if (f == members[j].val_macro_f1() &&
                !same_parameters(members[i].checkpoint, members[j].checkpoint)) {
                throw ConfigError("members '" + members[i].name + "' and '" + members[j].name +
                                  "' share validation F1 " + std::to_string(f) +
                                  "; the tie-break would be ambiguous");
            }
        }
    }
    std::size_t best_member = 0;
    for (std::size_t i = 1; i < members.size(); ++i) {
        if (members[i].val_macro_f1() > members[best_member].val_macro_f1()) {
            best_member = i;
        }
    }
    const auto& first = members.front().checkpoint;
    for (const auto& m : members) {
        if (m.checkpoint.params.shape().embed_dim != first.params.shape().embed_dim ||
            m.checkpoint.params.shape().num_classes != first.params.shape().num_classes) {
            throw CompatibilityError("member '" + m.name + "' has a different embedding or class count");
        }
        if (m.checkpoint.meta.class_names != first.meta.class_names) {
            throw CompatibilityError("member '" + m.name + "' was trained on a different class table");
        }
    }
    if (!first.meta.class_names.empty() && first.meta.class_names != data.classes.names()) {
        throw CompatibilityError("dataset class table does not match the ensemble's");
    }

    const std::size_t k = data.classes.size();
    std::vector<int> labels;
    for (const auto& s : data.samples) {
        labels.push_back(s.label);
    }
    std::vector<std::vector<int>> member_preds;
    EnsembleReport report;
    for (const auto& m : members) {
        member_preds.push_back(train::predict_all(m.checkpoint.params, data, workers));
        report.members.push_back(train::compute_metrics(
            train::ConfusionMatrix::from_predictions(labels, member_preds.back(), k)));
    }
    std::vector<int> combined(labels.size());
    std::vector<int> votes(members.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = 0; j < members.size(); ++j) {
            votes[j] = member_preds[j][i];
        }
        combined[i] = vote_with_fallback(votes, best_member);
    }
    report.ensemble =
        train::compute_metrics(train::ConfusionMatrix::from_predictions(labels, combined, k));
    return report;
}

}  // namespace emopool::ensemble
