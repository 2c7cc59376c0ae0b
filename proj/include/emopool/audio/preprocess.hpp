// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <span>

#include "emopool/audio/waveform.hpp"
#include "emopool/numerics/layers.hpp"
#include "emopool/numerics/rng.hpp"

namespace emopool::audio {

inline constexpr double kDefaultWindowSeconds = 5.5;

// Mean and population std over the concatenation of all training samples.
// Throws ConfigError for an empty or constant corpus.
NormStats compute_norm_stats(std::span<const Waveform> corpus);

Waveform normalize(const Waveform& w, const NormStats& stats);

std::size_t window_length(double window_seconds, std::uint32_t sample_rate);

// Train mode: random crop of exactly window_length() samples, or repetition
// padding (output[i] = input[i mod len]) for shorter input. Eval: identity.
Waveform crop_or_pad(const Waveform& w, double window_seconds, Rng& rng, Mode mode);

// Linear-interpolation resampling by a speed factor: output length is
// round(len / factor) and output[i] samples the input at i * factor.
Waveform speed_perturb(const Waveform& w, double factor);

// Linear-interpolation change of sample rate.
Waveform resample(const Waveform& w, std::uint32_t target_rate);

// Linear convolution with an impulse response, truncated to the input length.
Waveform add_reverb(const Waveform& w, std::span<const float> rir);

// Exponentially decaying Gaussian noise, h[n] = g[n] * 10^(-3n / (t60 * sr)),
// with h[0] = 1 and length ceil(t60 * sr).
std::vector<float> make_synthetic_rir(double t60_seconds, std::uint32_t sample_rate, Rng& rng);

// Mean square of the samples.
double power(std::span<const float> x);

// Scale factor that puts noise at snr_db below the signal.
double noise_gain(double signal_power, double noise_power, double snr_db);

// w + alpha * noise, noise looped or cropped to the signal length.
// A silent signal or silent noise is returned unchanged.
Waveform add_noise(const Waveform& w, const Waveform& noise, double snr_db);

Waveform white_noise(std::size_t n, std::uint32_t sample_rate, Rng& rng);

}  // namespace emopool::audio
