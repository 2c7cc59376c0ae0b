// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#include "emopool/dataio/features.hpp"

#include "emopool/detail/bytes.hpp"
#include "emopool/errors.hpp"

namespace emopool::dataio {

const char* modality_name(Modality m) noexcept {
    return m == Modality::speech ? "speech" : "text";
}

std::vector<std::uint8_t> write_features(const FeatureSequence& f) {
    if (f.frames() == 0 || f.dim() == 0) {
        throw DimensionError("feature sequence must have at least one frame and dimension");
    }
    detail::ByteWriter out;
    out.tag("EMOF");
    out.u16(kFeatureVersion);
    out.u8(static_cast<std::uint8_t>(f.modality));
    out.u8(0);
    out.u32(static_cast<std::uint32_t>(f.frames()));
    out.u32(static_cast<std::uint32_t>(f.dim()));
    out.f32_array(f.values.flat());
    return out.take();
}

FeatureSequence read_features(std::span<const std::uint8_t> bytes) {
    detail::ByteReader r(bytes);
    const std::string magic = r.str(4, "EMOF header");
    if (magic != "EMOF") {
        throw ParseError("EMOF header: bad magic '" + magic + "'");
    }
    const auto version = r.u16("EMOF header");
    if (version != kFeatureVersion) {
        throw ParseError("EMOF header: unsupported version " + std::to_string(version));
    }
    const auto modality = r.u8("EMOF header");
    if (modality > 1) {
        throw ParseError("EMOF header: unknown modality " + std::to_string(modality));
    }
    r.u8("EMOF header");
    const std::uint64_t frames = r.u32("EMOF header");
    const std::uint64_t dim = r.u32("EMOF header");
    if (frames == 0 || dim == 0) {
        throw ParseError("EMOF header: empty shape " + std::to_string(frames) + "x" +
                         std::to_string(dim));
    }
    const std::uint64_t expected = frames * dim * sizeof(float);
    if (r.remaining() != expected) {
        throw ParseError("EMOF payload: header declares " + std::to_string(expected) +
                         " bytes, file has " + std::to_string(r.remaining()));
    }
    auto values = r.f32_array(frames * dim, "EMOF payload");
    FeatureSequence f;
    f.modality = static_cast<Modality>(modality);
    try {
        f.values = Tensor2D<float>::checked(frames, dim, std::move(values));
    } catch (const DimensionError& e) {
        throw ParseError(std::string("EMOF payload: ") + e.what());
    }
    return f;
}

FeatureSequence load_features(const std::filesystem::path& path) {
    const auto bytes = detail::read_file(path);
    try {
        return read_features(bytes);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void save_features(const std::filesystem::path& path, const FeatureSequence& f) {
    detail::write_file(path, write_features(f));
}

Tensor2D<float> fuse_modalities(const FeatureSequence& speech, const FeatureSequence& text) {
    if (speech.dim() != text.dim()) {
        throw DimensionError("cannot fuse speech dim " + std::to_string(speech.dim()) +
                             " with text dim " + std::to_string(text.dim()));
    }
    const std::size_t frames = speech.frames() + text.frames();
    if (frames == 0) {
        throw DimensionError("cannot fuse two empty modalities");
    }
    std::vector<float> data;
    data.reserve(frames * speech.dim());
    data.insert(data.end(), speech.values.values().begin(), speech.values.values().end());
    data.insert(data.end(), text.values.values().begin(), text.values.values().end());
    return Tensor2D<float>(frames, speech.dim(), std::move(data));
}

}  // namespace emopool::dataio
