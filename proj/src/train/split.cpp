// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#include "emopool/train/split.hpp"

#include <algorithm>
#include <cmath>

#include "emopool/errors.hpp"
#include "emopool/numerics/rng.hpp"

namespace emopool::train {

SplitIndices stratified_split(const std::vector<dataio::Sample>& samples, std::size_t num_classes,
                              double val_fraction, std::uint64_t seed) {
    if (!(val_fraction > 0.0 && val_fraction < 1.0)) {
        throw ConfigError("validation fraction must be in (0, 1)");
    }
    std::vector<std::vector<std::size_t>> by_class(num_classes);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        by_class.at(static_cast<std::size_t>(samples[i].label)).push_back(i);
    }
    SplitIndices out;
    for (std::size_t k = 0; k < num_classes; ++k) {
        auto& idx = by_class[k];
        std::size_t n_val = 0;
        if (idx.size() >= 2) {
            const auto wanted = static_cast<std::size_t>(std::llround(val_fraction * static_cast<double>(idx.size())));
            n_val = std::clamp<std::size_t>(wanted, 1, idx.size() - 1);
        }
        Rng rng = Rng::stream(seed, "split", k);
        rng.shuffle(std::span<std::size_t>(idx));
        out.val.insert(out.val.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_val));
        out.train.insert(out.train.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_val), idx.end());
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.val.begin(), out.val.end());
    return out;
}

}  // namespace emopool::train
