// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <vector>

#include "emopool/dataio/synthetic.hpp"
#include "emopool/train/split.hpp"
#include "emopool/train/trainer.hpp"

namespace emopool::testing {

struct SplitData {
    dataio::Dataset train;
    dataio::Dataset val;
};

inline SplitData synthetic_split(const dataio::SyntheticSpec& spec, double val_fraction = 0.15,
                                 std::uint64_t split_seed = 0) {
    const auto samples = dataio::gen_synthetic(spec);
    const auto idx = train::stratified_split(samples, spec.classes.size(), val_fraction, split_seed);
    SplitData d{{spec.classes, {}}, {spec.classes, {}}};
    for (auto i : idx.train) {
        d.train.samples.push_back(samples[i]);
    }
    for (auto i : idx.val) {
        d.val.samples.push_back(samples[i]);
    }
    return d;
}

// Two-class set with a 10:1 imbalance and heavily overlapping class clouds.
// Balanced weights only beat the plain loss on macro F1 when the pooled
// classes sit about one noise width apart; with well separated clouds the
// unweighted boundary scores higher. The low dimension keeps the head close
// to the best boundary instead of memorising 500 samples.
inline dataio::SyntheticSpec skewed_pair(std::uint64_t seed) {
    dataio::SyntheticSpec spec;
    spec.classes = dataio::ClassTable({"major", "minor"});
    spec.counts = {500, 50};
    spec.dim = 4;
    spec.speech_frames_min = 2;
    spec.speech_frames_max = 4;
    spec.text_frames_min = 1;
    spec.text_frames_max = 2;
    spec.separation = 0.5;
    spec.noise = 1.0;
    spec.seed = seed;
    return spec;
}

// Samples past the generated counts, same class means, 10:1 ratio.
inline dataio::Dataset held_out(const dataio::SyntheticSpec& spec, std::size_t per_unit) {
    dataio::Dataset d{spec.classes, {}};
    for (std::size_t k = 0; k < spec.counts.size(); ++k) {
        const std::size_t n = per_unit * spec.counts[k] / spec.counts.back();
        for (std::size_t i = 0; i < n; ++i) {
            d.samples.push_back(dataio::gen_synthetic_sample(spec, k, spec.counts[k] + i));
        }
    }
    return d;
}

}  // namespace emopool::testing
