// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <vector>

#include "emopool/dataio/features.hpp"
#include "emopool/dataio/manifest.hpp"

namespace emopool::dataio {

// Stand-in for extractor outputs: every frame of a class-k sample is
// mu_k + noise * g, with mu_k a seeded random direction of norm
// `separation` (one per class and modality) and g i.i.d. unit Gaussian.
struct SyntheticSpec {
    ClassTable classes = ClassTable::canonical();
    std::vector<std::size_t> counts{300, 250, 150, 120, 100, 80};
    std::size_t dim = 64;
    std::size_t speech_frames_min = 8;
    std::size_t speech_frames_max = 24;
    std::size_t text_frames_min = 2;
    std::size_t text_frames_max = 8;
    double separation = 5.0;
    double noise = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

// Class-major order: all of class 0, then class 1, ... Sample i of class k
// depends only on (seed, k, i).
std::vector<Sample> gen_synthetic(const SyntheticSpec& spec);
Sample gen_synthetic_sample(const SyntheticSpec& spec, std::size_t class_index, std::size_t i);

}  // namespace emopool::dataio
