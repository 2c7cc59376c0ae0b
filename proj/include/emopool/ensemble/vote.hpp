// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "emopool/dataio/manifest.hpp"
#include "emopool/model/checkpoint.hpp"
#include "emopool/train/metrics.hpp"

namespace emopool::ensemble {

struct EnsembleMember {
    std::string name;
    model::Checkpoint checkpoint;

    double val_macro_f1() const noexcept { return checkpoint.meta.best_val_macro_f1; }
};

// Throws ConfigError unless there is an odd number >= 3 of members with
// pairwise distinct validation scores in [0, 1].
void validate_members(std::span<const double> member_val_f1);

// Class with strictly more votes than every other class; failing that, the
// prediction of the member with the highest validation macro F1.
int hard_vote(std::span<const int> predictions, std::span<const double> member_val_f1);

struct EnsembleReport {
    train::Metrics ensemble;
    std::vector<train::Metrics> members;
};

// Members must agree on class table and embedding dimension with each other
// and with the dataset.
EnsembleReport ensemble_evaluate(const std::vector<EnsembleMember>& members,
                                 const dataio::Dataset& data, unsigned workers = 1);

}  // namespace emopool::ensemble
