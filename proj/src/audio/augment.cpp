// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#include "emopool/audio/augment.hpp"

#include <algorithm>
#include <string>

#include "emopool/audio/preprocess.hpp"
#include "emopool/errors.hpp"
#include "emopool/numerics/rng.hpp"

namespace emopool::audio {

const char* transform_name(Transform t) noexcept {
    switch (t) {
        case Transform::none:
            return "none";
        case Transform::speed:
            return "speed";
        case Transform::reverb:
            return "reverb";
        case Transform::noise:
            return "noise";
    }
    return "unknown";
}

void AugmentChain::validate() const {
    if (!(probability >= 0.0 && probability <= 1.0)) {
        throw ConfigError("augmentation probability must be in [0, 1]");
    }
    if (speed_factors.empty()) {
        throw ConfigError("speed factor set must be nonempty");
    }
    if (std::any_of(speed_factors.begin(), speed_factors.end(),
                    [](double f) { return !(f > 0.0); })) {
        throw ConfigError("speed factors must be positive");
    }
    if (!(t60_min > 0.0 && t60_min <= t60_max)) {
        throw ConfigError("T60 range must satisfy 0 < min <= max");
    }
    if (!(snr_min_db <= snr_max_db)) {
        throw ConfigError("SNR range must satisfy min <= max");
    }
    for (const auto& clip : noise_bank) {
        if (clip.samples.empty()) {
            throw ConfigError("noise bank contains an empty clip");
        }
    }
}

AugmentOutcome maybe_augment(const Waveform& w, const AugmentChain& chain, std::uint64_t seed,
                             std::uint64_t epoch, std::uint64_t sample_id, Mode mode) {
    chain.validate();
    AugmentOutcome out{w, Transform::none, 0.0, -1};
    if (mode == Mode::eval) {
        return out;
    }
    Rng rng = Rng::stream(seed, "augment", epoch, sample_id);
    if (!rng.bernoulli(chain.probability)) {
        return out;
    }
    switch (rng.below(3)) {
        case 0: {
            const double factor = chain.speed_factors[rng.below(chain.speed_factors.size())];
            out.waveform = speed_perturb(w, factor);
            out.transform = Transform::speed;
            out.parameter = factor;
            break;
        }
        case 1: {
            const double t60 = rng.uniform(chain.t60_min, chain.t60_max);
            const auto rir = make_synthetic_rir(t60, w.sample_rate, rng);
            out.waveform = add_reverb(w, rir);
            out.transform = Transform::reverb;
            out.parameter = t60;
            break;
        }
        default: {
            const double snr = rng.uniform(chain.snr_min_db, chain.snr_max_db);
            if (chain.noise_bank.empty()) {
                out.waveform = add_noise(w, white_noise(w.samples.size(), w.sample_rate, rng), snr);
            } else {
                const auto idx = rng.below(chain.noise_bank.size());
                out.waveform = add_noise(w, chain.noise_bank[idx], snr);
                out.noise_index = static_cast<int>(idx);
            }
            out.transform = Transform::noise;
            out.parameter = snr;
            break;
        }
    }
    return out;
}

}  // namespace emopool::audio
