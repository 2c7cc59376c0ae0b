// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "emopool/model/model.hpp"

namespace emopool::model {

struct CheckpointMeta {
    std::uint64_t config_hash = 0;
    double best_val_macro_f1 = 0.0;
    std::uint32_t epoch = 0;
    std::vector<std::string> class_names;
};

struct Checkpoint {
    ModelParams<float> params;
    CheckpointMeta meta;
};

// EMCK layout, little-endian:
//   "EMCK" | u16 version=1 | u32 block count
//   block: u16 name length | UTF-8 name | u8 rank | rank x u32 dims | f32 data
//   "META" | u64 config hash | f64 best val macro F1 | u32 epoch
//          | u16 class count | (u16 length | UTF-8 name) per class
inline constexpr std::uint16_t kCheckpointVersion = 1;

std::vector<std::uint8_t> write_checkpoint(const Checkpoint& ckpt);
Checkpoint read_checkpoint(std::span<const std::uint8_t> bytes);

Checkpoint load_checkpoint(const std::filesystem::path& path);
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);

}  // namespace emopool::model
