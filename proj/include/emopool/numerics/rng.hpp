// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace emopool {

// Project-wide pseudo random generator: xoshiro256** (Blackman & Vigna),
// state expanded from a 64-bit seed with splitmix64. All distributions are
// implemented here rather than through <random> so that draw sequences are
// identical across standard libraries.
//
// Independent child streams are derived by hashing the parent seed with a
// label and up to two integer coordinates (e.g. epoch, sample index), so a
// stream's contents never depend on how many draws were taken elsewhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept;

    static Rng stream(std::uint64_t seed, std::string_view label, std::uint64_t a = 0,
                      std::uint64_t b = 0) noexcept {
        return Rng(derive_seed(seed, label, a, b));
    }

    static std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                                     std::uint64_t a = 0, std::uint64_t b = 0) noexcept;

    std::uint64_t next_u64() noexcept;

    // Uniform in [0, 1) with 53 bits of resolution.
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n); n must be > 0. Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t n) noexcept;

    // Standard normal via Box-Muller (one variate per call, no cached spare).
    double normal() noexcept;

    bool bernoulli(double p) noexcept { return uniform() < p; }

    template <class T>
    void shuffle(std::span<T> items) noexcept {
        for (std::size_t i = items.size(); i > 1; --i) {
            auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    std::array<std::uint64_t, 4> state() const noexcept { return s_; }

private:
    std::array<std::uint64_t, 4> s_{};
};

std::uint64_t splitmix64(std::uint64_t& x) noexcept;
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace emopool
