// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#include "emopool/audio/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "emopool/errors.hpp"

namespace emopool::audio {

namespace {

// Samples `in` at fractional position `pos` with linear interpolation,
// holding the last sample past the end.
float interpolate(const std::vector<float>& in, double pos) {
    const auto i0 = static_cast<std::size_t>(pos);
    if (i0 + 1 >= in.size()) {
        return in.back();
    }
    const double frac = pos - static_cast<double>(i0);
    if (frac == 0.0) {
        return in[i0];
    }
    return static_cast<float>((1.0 - frac) * in[i0] + frac * in[i0 + 1]);
}

Waveform stretch(const Waveform& w, std::size_t out_len, double step, std::uint32_t rate) {
    Waveform out;
    out.sample_rate = rate;
    out.samples.resize(out_len);
    for (std::size_t i = 0; i < out_len; ++i) {
        out.samples[i] = interpolate(w.samples, static_cast<double>(i) * step);
    }
    return out;
}

void require_nonempty(const Waveform& w, const char* op) {
    if (w.samples.empty()) {
        throw DimensionError(std::string(op) + ": empty waveform");
    }
}

}  // namespace

NormStats compute_norm_stats(std::span<const Waveform> corpus) {
    std::size_t n = 0;
    double sum = 0.0;
    for (const auto& w : corpus) {
        for (float s : w.samples) {
            sum += s;
        }
        n += w.samples.size();
    }
    if (n == 0) {
        throw ConfigError("normalization statistics need at least one sample");
    }
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (const auto& w : corpus) {
        for (float s : w.samples) {
            ss += (s - mean) * (s - mean);
        }
    }
    const double std = std::sqrt(ss / static_cast<double>(n));
    if (!(std > 0.0)) {
        throw ConfigError("training corpus is constant (standard deviation 0)");
    }
    return {mean, std};
}

Waveform normalize(const Waveform& w, const NormStats& stats) {
    Waveform out{std::vector<float>(w.samples.size()), w.sample_rate};
    for (std::size_t i = 0; i < w.samples.size(); ++i) {
        out.samples[i] = static_cast<float>((w.samples[i] - stats.mean) / stats.std);
    }
    return out;
}

std::size_t window_length(double window_seconds, std::uint32_t sample_rate) {
    if (!(window_seconds > 0.0)) {
        throw ConfigError("crop window must be positive");
    }
    return static_cast<std::size_t>(std::llround(window_seconds * sample_rate));
}

Waveform crop_or_pad(const Waveform& w, double window_seconds, Rng& rng, Mode mode) {
    require_nonempty(w, "crop_or_pad");
    const std::size_t window = window_length(window_seconds, w.sample_rate);
    const std::size_t len = w.samples.size();
    if (mode == Mode::eval || len == window) {
        return w;
    }
    Waveform out{std::vector<float>(window), w.sample_rate};
    if (len > window) {
        const auto start = static_cast<std::size_t>(rng.below(len - window + 1));
        std::copy_n(w.samples.begin() + static_cast<std::ptrdiff_t>(start), window,
                    out.samples.begin());
    } else {
        for (std::size_t i = 0; i < window; ++i) {
            out.samples[i] = w.samples[i % len];
        }
    }
    return out;
}

Waveform speed_perturb(const Waveform& w, double factor) {
    if (!(factor > 0.0)) {
        throw ConfigError("speed factor must be positive");
    }
    require_nonempty(w, "speed_perturb");
    if (factor == 1.0) {
        return w;
    }
    const double len = static_cast<double>(w.samples.size());
    const auto out_len = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(len / factor)));
    return stretch(w, out_len, factor, w.sample_rate);
}

Waveform resample(const Waveform& w, std::uint32_t target_rate) {
    if (target_rate == 0) {
        throw ConfigError("target sample rate must be positive");
    }
    require_nonempty(w, "resample");
    if (target_rate == w.sample_rate) {
        return w;
    }
    const double ratio = static_cast<double>(w.sample_rate) / target_rate;
    const double len = static_cast<double>(w.samples.size());
    const auto out_len = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(len / ratio)));
    return stretch(w, out_len, ratio, target_rate);
}

Waveform add_reverb(const Waveform& w, std::span<const float> rir) {
    if (rir.empty()) {
        throw ConfigError("impulse response must be nonempty");
    }
    const std::size_t n = w.samples.size();
    Waveform out{std::vector<float>(n), w.sample_rate};
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t taps = std::min(rir.size(), i + 1);
        double acc = 0.0;
        for (std::size_t k = 0; k < taps; ++k) {
            acc += static_cast<double>(rir[k]) * w.samples[i - k];
        }
        out.samples[i] = static_cast<float>(acc);
    }
    return out;
}

std::vector<float> make_synthetic_rir(double t60_seconds, std::uint32_t sample_rate, Rng& rng) {
    if (!(t60_seconds > 0.0)) {
        throw ConfigError("T60 must be positive");
    }
    const auto len = static_cast<std::size_t>(std::ceil(t60_seconds * sample_rate));
    std::vector<float> h(std::max<std::size_t>(len, 1));
    h[0] = 1.0f;
    const double decay_span = t60_seconds * sample_rate;
    for (std::size_t i = 1; i < h.size(); ++i) {
        const double envelope = std::pow(10.0, -3.0 * static_cast<double>(i) / decay_span);
        h[i] = static_cast<float>(rng.normal() * envelope);
    }
    return h;
}

double power(std::span<const float> x) {
    if (x.empty()) {
        return 0.0;
    }
    double acc = 0.0;
    for (float v : x) {
        acc += static_cast<double>(v) * v;
    }
    return acc / static_cast<double>(x.size());
}

double noise_gain(double signal_power, double noise_power, double snr_db) {
    return std::sqrt(signal_power / (noise_power * std::pow(10.0, snr_db / 10.0)));
}

Waveform add_noise(const Waveform& w, const Waveform& noise, double snr_db) {
    if (noise.samples.empty()) {
        throw ConfigError("noise clip must be nonempty");
    }
    const std::size_t n = w.samples.size();
    std::vector<float> fitted(n);
    for (std::size_t i = 0; i < n; ++i) {
        fitted[i] = noise.samples[i % noise.samples.size()];
    }
    const double ps = power(w.samples);
    const double pn = power(fitted);
    if (ps == 0.0 || pn == 0.0) {
        return w;
    }
    const double alpha = noise_gain(ps, pn, snr_db);
    Waveform out{std::vector<float>(n), w.sample_rate};
    for (std::size_t i = 0; i < n; ++i) {
        out.samples[i] = static_cast<float>(w.samples[i] + alpha * fitted[i]);
    }
    return out;
}

Waveform white_noise(std::size_t n, std::uint32_t sample_rate, Rng& rng) {
    Waveform out{std::vector<float>(n), sample_rate};
    for (auto& s : out.samples) {
        s = static_cast<float>(rng.normal());
    }
    return out;
}

}  // namespace emopool::audio
