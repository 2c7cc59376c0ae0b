// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <vector>

#include "emopool/dataio/manifest.hpp"

namespace emopool::train {

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> val;
};

// Stratified split: each class with n >= 2 samples contributes
// clamp(round(fraction * n), 1, n - 1) samples to validation, chosen by a
// seeded shuffle. Singleton classes stay in training. Both index lists are
// returned in ascending (manifest) order.
SplitIndices stratified_split(const std::vector<dataio::Sample>& samples, std::size_t num_classes,
                              double val_fraction, std::uint64_t seed);

}  // namespace emopool::train
