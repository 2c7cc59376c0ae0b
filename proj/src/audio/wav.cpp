// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#include "emopool/audio/wav.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "emopool/detail/bytes.hpp"
#include "emopool/errors.hpp"

namespace emopool::audio {

namespace {

constexpr std::uint16_t kFormatPcm = 1;

struct FmtChunk {
    std::uint16_t format = 0;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t block_align = 0;
    std::uint16_t bits = 0;
};

std::string quoted(const std::string& id) {
    return "'" + id + "'";
}

FmtChunk parse_fmt(std::span<const std::uint8_t> body) {
    detail::ByteReader r(body);
    FmtChunk f;
    f.format = r.u16("'fmt ' chunk");
    f.channels = r.u16("'fmt ' chunk");
    f.sample_rate = r.u32("'fmt ' chunk");
    r.u32("'fmt ' chunk");  // byte rate
    f.block_align = r.u16("'fmt ' chunk");
    f.bits = r.u16("'fmt ' chunk");
    if (f.format != kFormatPcm) {
        throw ParseError("'fmt ' chunk: unsupported codec " + std::to_string(f.format) +
                         " (only PCM is supported)");
    }
    if (f.bits != 16) {
        throw ParseError("'fmt ' chunk: unsupported bit depth " + std::to_string(f.bits) +
                         " (only 16-bit PCM is supported)");
    }
    if (f.channels == 0 || f.sample_rate == 0) {
        throw ParseError("'fmt ' chunk: zero channels or sample rate");
    }
    if (f.block_align != f.channels * 2) {
        throw ParseError("'fmt ' chunk: block align " + std::to_string(f.block_align) +
                         " inconsistent with " + std::to_string(f.channels) + " channels");
    }
    return f;
}

}  // namespace

Waveform read_wav(std::span<const std::uint8_t> bytes) {
    detail::ByteReader r(bytes);
    const std::string magic = r.str(4, "RIFF header");
    if (magic != "RIFF") {
        throw ParseError("RIFF header: bad magic " + quoted(magic));
    }
    r.u32("RIFF header");
    const std::string form = r.str(4, "RIFF header");
    if (form != "WAVE") {
        throw ParseError("RIFF header: form type " + quoted(form) + " is not 'WAVE'");
    }

    std::optional<FmtChunk> fmt;
    std::optional<std::span<const std::uint8_t>> data;
    while (!r.at_end()) {
        const std::string id = r.str(4, "chunk header");
        const std::uint32_t size = r.u32("chunk header of " + quoted(id));
        auto body = r.take(size, "chunk " + quoted(id));
        if (size % 2 == 1 && !r.at_end()) {
            r.skip(1, "pad byte of chunk " + quoted(id));
        }
        if (id == "fmt ") {
            fmt = parse_fmt(body);
        } else if (id == "data") {
            data = body;
        }
    }
    if (!fmt) {
        throw ParseError("missing 'fmt ' chunk");
    }
    if (!data) {
        throw ParseError("missing 'data' chunk");
    }
    if (data->size() % fmt->block_align != 0) {
        throw ParseError("'data' chunk: size " + std::to_string(data->size()) +
                         " is not a multiple of the block align");
    }
    const std::size_t frames = data->size() / fmt->block_align;
    if (frames == 0) {
        throw ParseError("'data' chunk holds no samples");
    }

    Waveform w;
    w.sample_rate = fmt->sample_rate;
    w.samples.resize(frames);
    detail::ByteReader pcm(*data);
    for (std::size_t i = 0; i < frames; ++i) {
        float acc = 0.0f;
        for (std::uint16_t c = 0; c < fmt->channels; ++c) {
            acc += static_cast<float>(pcm.i16("'data' chunk")) / 32768.0f;
        }
        w.samples[i] = fmt->channels == 1 ? acc : acc / static_cast<float>(fmt->channels);
    }
    return w;
}

std::vector<std::uint8_t> write_wav(const Waveform& w) {
    const auto data_bytes = static_cast<std::uint32_t>(w.samples.size() * 2);
    detail::ByteWriter out;
    out.tag("RIFF");
    out.u32(36 + data_bytes);
    out.tag("WAVE");
    out.tag("fmt ");
    out.u32(16);
    out.u16(kFormatPcm);
    out.u16(1);
    out.u32(w.sample_rate);
    out.u32(w.sample_rate * 2);
    out.u16(2);
    out.u16(16);
    out.tag("data");
    out.u32(data_bytes);
    for (float s : w.samples) {
        const double scaled = std::nearbyint(static_cast<double>(s) * 32768.0);
        out.i16(static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0)));
    }
    return out.take();
}

Waveform load_wav(const std::filesystem::path& path) {
    const auto bytes = detail::read_file(path);
    try {
        return read_wav(bytes);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void save_wav(const std::filesystem::path& path, const Waveform& w) {
    detail::write_file(path, write_wav(w));
}

}  // namespace emopool::audio
