// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#include "emopool/model/checkpoint.hpp"

#include <map>

#include "emopool/detail/bytes.hpp"
#include "emopool/errors.hpp"

namespace emopool::model {

namespace {

struct Block {
    std::vector<std::uint32_t> dims;
    std::vector<float> data;
};

std::size_t element_count(const std::vector<std::uint32_t>& dims) {
    std::size_t n = 1;
    for (auto d : dims) {
        n *= d;
    }
    return n;
}

const Block& require_block(const std::map<std::string, Block>& blocks, const std::string& name) {
    auto it = blocks.find(name);
    if (it == blocks.end()) {
        throw ParseError("checkpoint: missing parameter block '" + name + "'");
    }
    return it->second;
}

ModelShape infer_shape(const std::map<std::string, Block>& blocks) {
    const auto& query = require_block(blocks, "pool.query");
    const auto& proj = require_block(blocks, "proj.weight");
    const auto& out = require_block(blocks, "out.weight");
    if (query.dims.size() != 1 || proj.dims.size() != 2 || out.dims.size() != 2) {
        throw ParseError("checkpoint: unexpected parameter ranks");
    }
    std::size_t layers = 0;
    while (blocks.count("hidden." + std::to_string(layers) + ".weight") != 0) {
        ++layers;
    }
    return {query.dims[0], proj.dims[1], layers, out.dims[1]};
}

}  // namespace

std::vector<std::uint8_t> write_checkpoint(const Checkpoint& ckpt) {
    emopool::detail::ByteWriter out;
    out.tag("EMCK");
    out.u16(kCheckpointVersion);
    std::uint32_t count = 0;
    ckpt.params.visit([&](const std::string&, auto, const auto&) { ++count; });
    out.u32(count);
    ckpt.params.visit([&](const std::string& name, std::span<const float> data,
                          const std::vector<std::uint32_t>& dims) {
        out.u16(static_cast<std::uint16_t>(name.size()));
        out.bytes(name);
        out.u8(static_cast<std::uint8_t>(dims.size()));
        for (auto d : dims) {
            out.u32(d);
        }
        out.f32_array(data);
    });
    out.tag("META");
    out.u64(ckpt.meta.config_hash);
    out.f64(ckpt.meta.best_val_macro_f1);
    out.u32(ckpt.meta.epoch);
    out.u16(static_cast<std::uint16_t>(ckpt.meta.class_names.size()));
    for (const auto& n : ckpt.meta.class_names) {
        out.u16(static_cast<std::uint16_t>(n.size()));
        out.bytes(n);
    }
    return out.take();
}

Checkpoint read_checkpoint(std::span<const std::uint8_t> bytes) {
    emopool::detail::ByteReader r(bytes);
    const auto magic = r.str(4, "checkpoint header");
    if (magic != "EMCK") {
        throw ParseError("checkpoint header: bad magic '" + magic + "'");
    }
    const auto version = r.u16("checkpoint header");
    if (version != kCheckpointVersion) {
        throw ParseError("checkpoint header: unsupported version " + std::to_string(version));
    }
    const auto count = r.u32("checkpoint header");
    std::map<std::string, Block> blocks;
    for (std::uint32_t i = 0; i < count; ++i) {
        const auto name_len = r.u16("parameter block name");
        auto name = r.str(name_len, "parameter block name");
        const auto rank = r.u8("parameter block '" + name + "'");
        Block b;
        for (std::uint8_t d = 0; d < rank; ++d) {
            b.dims.push_back(r.u32("parameter block '" + name + "'"));
        }
        b.data = r.f32_array(element_count(b.dims), "parameter block '" + name + "'");
        if (!blocks.emplace(name, std::move(b)).second) {
            throw ParseError("checkpoint: duplicate parameter block '" + name + "'");
        }
    }

    Checkpoint ckpt;
    if (r.str(4, "metadata block") != "META") {
        throw ParseError("checkpoint: metadata block missing");
    }
    ckpt.meta.config_hash = r.u64("metadata block");
    ckpt.meta.best_val_macro_f1 = r.f64("metadata block");
    ckpt.meta.epoch = r.u32("metadata block");
    const auto classes = r.u16("metadata block");
    for (std::uint16_t k = 0; k < classes; ++k) {
        const auto len = r.u16("metadata class name");
        ckpt.meta.class_names.push_back(r.str(len, "metadata class name"));
    }
    if (!r.at_end()) {
        throw ParseError("checkpoint: " + std::to_string(r.remaining()) + " trailing bytes");
    }

    const ModelShape shape = infer_shape(blocks);
    ModelParams<float> params{std::vector<float>(shape.embed_dim),
                              ClassifierParams<float>{}};
    auto& c = params.classifier;
    c.proj_weight = Tensor2D<float>(shape.embed_dim, shape.hidden_width);
    c.proj_bias.resize(shape.hidden_width);
    for (std::size_t i = 0; i < shape.hidden_layers; ++i) {
        const std::size_t h = shape.hidden_width;
        c.hidden.push_back({Tensor2D<float>(h, h), std::vector<float>(h), std::vector<float>(h),
                            std::vector<float>(h)});
    }
    c.out_weight = Tensor2D<float>(shape.hidden_width, shape.num_classes);
    c.out_bias.resize(shape.num_classes);

    std::size_t used = 0;
    params.visit([&](const std::string& name, std::span<float> data,
                     const std::vector<std::uint32_t>& dims) {
        const auto& b = require_block(blocks, name);
        if (b.dims != dims) {
            throw ParseError("checkpoint: block '" + name + "' has inconsistent shape");
        }
        std::copy(b.data.begin(), b.data.end(), data.begin());
        ++used;
    });
    if (used != blocks.size()) {
        throw ParseError("checkpoint: unrecognized parameter blocks present");
    }
    if (!ckpt.meta.class_names.empty() && ckpt.meta.class_names.size() != shape.num_classes) {
        throw ParseError("checkpoint: class table size does not match the output layer");
    }
    ckpt.params = std::move(params);
    return ckpt;
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    const auto bytes = emopool::detail::read_file(path);
    try {
        return read_checkpoint(bytes);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
    emopool::detail::write_file(path, write_checkpoint(ckpt));
}

}  // namespace emopool::model
