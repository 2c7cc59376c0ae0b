// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "emopool/numerics/tensor.hpp"

namespace emopool::dataio {

enum class Modality : std::uint8_t { speech = 0, text = 1 };

const char* modality_name(Modality m) noexcept;

// T x E embedding frames for one modality of one utterance.
struct FeatureSequence {
    Modality modality = Modality::speech;
    Tensor2D<float> values;

    std::size_t frames() const noexcept { return values.rows(); }
    std::size_t dim() const noexcept { return values.cols(); }
};

// EMOF layout, little-endian:
//   "EMOF" | u16 version=1 | u8 modality | u8 reserved=0 | u32 T | u32 E | T*E f32
inline constexpr std::size_t kFeatureHeaderBytes = 16;
inline constexpr std::uint16_t kFeatureVersion = 1;

std::vector<std::uint8_t> write_features(const FeatureSequence& f);
FeatureSequence read_features(std::span<const std::uint8_t> bytes);

FeatureSequence load_features(const std::filesystem::path& path);
void save_features(const std::filesystem::path& path, const FeatureSequence& f);

// Frame-axis concatenation: speech frames first, then text frames.
Tensor2D<float> fuse_modalities(const FeatureSequence& speech, const FeatureSequence& text);

struct Sample {
    std::string id;
    FeatureSequence speech;
    FeatureSequence text;
    int label = 0;
};

}  // namespace emopool::dataio
