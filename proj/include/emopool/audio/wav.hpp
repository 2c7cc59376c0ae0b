// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "emopool/audio/waveform.hpp"

namespace emopool::audio {

// Parses a RIFF/WAVE container holding 16-bit PCM. Multichannel input is
// averaged to mono; unknown chunks are skipped. Samples are scaled by 1/32768.
// Throws ParseError naming the offending chunk.
Waveform read_wav(std::span<const std::uint8_t> bytes);

// Emits a canonical 44-byte-header mono PCM16 file (fmt + data chunks only).
// Samples are rounded to the nearest integer after scaling by 32768 and
// clamped to [-32768, 32767].
std::vector<std::uint8_t> write_wav(const Waveform& w);

Waveform load_wav(const std::filesystem::path& path);
void save_wav(const std::filesystem::path& path, const Waveform& w);

}  // namespace emopool::audio
