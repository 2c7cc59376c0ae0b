// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#include "emopool/dataio/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "emopool/errors.hpp"
#include "emopool/numerics/rng.hpp"

namespace emopool::dataio {

namespace {

std::vector<double> class_mean(const SyntheticSpec& spec, Modality m, std::size_t k) {
    Rng rng = Rng::stream(spec.seed, m == Modality::speech ? "synth-mean-speech" : "synth-mean-text", k);
    std::vector<double> mu(spec.dim);
    double norm = 0.0;
    for (auto& v : mu) {
        v = rng.normal();
        norm += v * v;
    }
    norm = std::sqrt(norm);
    for (auto& v : mu) {
        v *= spec.separation / norm;
    }
    return mu;
}

FeatureSequence draw_sequence(const std::vector<double>& mu, std::size_t frames, double noise,
                              Modality m, Rng& rng) {
    const std::size_t dim = mu.size();
    std::vector<float> data(frames * dim);
    for (std::size_t t = 0; t < frames; ++t) {
        for (std::size_t e = 0; e < dim; ++e) {
            data[t * dim + e] = static_cast<float>(mu[e] + noise * rng.normal());
        }
    }
    return {m, Tensor2D<float>(frames, dim, std::move(data))};
}

std::size_t draw_frames(Rng& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
}

}  // namespace

void SyntheticSpec::validate() const {
    if (counts.size() != classes.size()) {
        throw ConfigError("synthetic dataset lists " + std::to_string(counts.size()) + " counts for " +
                          std::to_string(classes.size()) + " classes");
    }
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] == 0) {
            throw ConfigError("class '" + classes.name(k) + "' needs at least one sample");
        }
    }
    if (dim == 0) {
        throw ConfigError("embedding dimension must be positive");
    }
    if (speech_frames_min == 0 || speech_frames_min > speech_frames_max || text_frames_min == 0 ||
        text_frames_min > text_frames_max) {
        throw ConfigError("frame ranges must satisfy 1 <= min <= max");
    }
    if (!(separation > 0.0) || !(noise >= 0.0)) {
        throw ConfigError("separation must be positive and noise non-negative");
    }
}

Sample gen_synthetic_sample(const SyntheticSpec& spec, std::size_t class_index, std::size_t i) {
    Rng rng = Rng::stream(spec.seed, "synth-sample", class_index, i);
    const auto speech_mu = class_mean(spec, Modality::speech, class_index);
    const auto text_mu = class_mean(spec, Modality::text, class_index);
    Sample s;
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04zu", i);
    s.id = spec.classes.name(class_index) + "_" + buf;
    s.label = static_cast<int>(class_index);
    const auto ts = draw_frames(rng, spec.speech_frames_min, spec.speech_frames_max);
    const auto tt = draw_frames(rng, spec.text_frames_min, spec.text_frames_max);
    s.speech = draw_sequence(speech_mu, ts, spec.noise, Modality::speech, rng);
    s.text = draw_sequence(text_mu, tt, spec.noise, Modality::text, rng);
    return s;
}

std::vector<Sample> gen_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    std::vector<Sample> out;
    for (std::size_t k = 0; k < spec.counts.size(); ++k) {
        for (std::size_t i = 0; i < spec.counts[k]; ++i) {
            out.push_back(gen_synthetic_sample(spec, k, i));
        }
    }
    return out;
}

}  // namespace emopool::dataio
