// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "emopool/audio/waveform.hpp"
#include "emopool/numerics/layers.hpp"

namespace emopool::audio {

enum class Transform { none, speed, reverb, noise };

const char* transform_name(Transform t) noexcept;

struct AugmentChain {
    double probability = 0.3;
    std::vector<double> speed_factors{0.9, 1.0, 1.1};
    double t60_min = 0.1;
    double t60_max = 0.5;
    double snr_min_db = 5.0;
    double snr_max_db = 20.0;
    // Background noise clips. Empty means white noise is synthesized.
    std::vector<Waveform> noise_bank;

    void validate() const;
};

struct AugmentOutcome {
    Waveform waveform;
    Transform transform = Transform::none;
    // Speed factor, T60 in seconds or SNR in dB, depending on the transform.
    double parameter = 0.0;
    // Index into the noise bank, or -1 for synthesized noise.
    int noise_index = -1;
};

// Streaming augmentation. In train mode a coin with the chain's probability
// decides whether exactly one transform, chosen uniformly from speed /
// reverb / noise, replaces the sample. All randomness comes from a stream
// keyed on (seed, epoch, sample_id), so results do not depend on the order
// in which samples are processed. Eval mode returns the input untouched.
AugmentOutcome maybe_augment(const Waveform& w, const AugmentChain& chain, std::uint64_t seed,
                             std::uint64_t epoch, std::uint64_t sample_id, Mode mode);

}  // namespace emopool::audio
