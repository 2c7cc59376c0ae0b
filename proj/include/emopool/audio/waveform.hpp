// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <vector>

namespace emopool::audio {

inline constexpr std::uint32_t kDefaultSampleRate = 16000;

struct Waveform {
    std::vector<float> samples;
    std::uint32_t sample_rate = kDefaultSampleRate;

    std::size_t size() const noexcept { return samples.size(); }
    double duration_seconds() const noexcept {
        return static_cast<double>(samples.size()) / sample_rate;
    }
};

// Dataset-global normalization statistics. Defaults are the values reported
// for the original training corpus; their units are left to the caller.
struct NormStats {
    double mean = -33.62;
    double std = 56.15;
};

}  // namespace emopool::audio
