// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emopool/errors.hpp"

namespace emopool::detail {

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u16(std::uint16_t v) { raw(&v, sizeof v); }
    void u32(std::uint32_t v) { raw(&v, sizeof v); }
    void u64(std::uint64_t v) { raw(&v, sizeof v); }
    void i16(std::int16_t v) { raw(&v, sizeof v); }
    void f32(float v) { raw(&v, sizeof v); }
    void f64(double v) { raw(&v, sizeof v); }
    void tag(std::string_view four_cc) { raw(four_cc.data(), four_cc.size()); }
    void bytes(std::string_view s) { raw(s.data(), s.size()); }
    void f32_array(std::span<const float> v) { raw(v.data(), v.size_bytes()); }

    void patch_u32(std::size_t offset, std::uint32_t v) {
        std::memcpy(buf_.data() + offset, &v, sizeof v);
    }
    std::size_t size() const noexcept { return buf_.size(); }
    std::vector<std::uint8_t> take() { return std::move(buf_); }

private:
    void raw(const void* p, std::size_t n) {
        const auto* b = static_cast<const std::uint8_t*>(p);
        buf_.insert(buf_.end(), b, b + n);
    }
    std::vector<std::uint8_t> buf_;
};

// Bounds-checked little-endian reader. `what` names the structure being read
// and ends up in ParseError messages.
class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint8_t u8(std::string_view what) { return read<std::uint8_t>(what); }
    std::uint16_t u16(std::string_view what) { return read<std::uint16_t>(what); }
    std::uint32_t u32(std::string_view what) { return read<std::uint32_t>(what); }
    std::uint64_t u64(std::string_view what) { return read<std::uint64_t>(what); }
    std::int16_t i16(std::string_view what) { return read<std::int16_t>(what); }
    float f32(std::string_view what) { return read<float>(what); }
    double f64(std::string_view what) { return read<double>(what); }

    std::string str(std::size_t n, std::string_view what) {
        require(n, what);
        std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
        pos_ += n;
        return s;
    }

    std::vector<float> f32_array(std::size_t n, std::string_view what) {
        if (n > remaining() / sizeof(float)) {
            truncated(what, n * sizeof(float));
        }
        std::vector<float> out(n);
        std::memcpy(out.data(), bytes_.data() + pos_, n * sizeof(float));
        pos_ += n * sizeof(float);
        return out;
    }

    std::span<const std::uint8_t> take(std::size_t n, std::string_view what) {
        require(n, what);
        auto s = bytes_.subspan(pos_, n);
        pos_ += n;
        return s;
    }

    void skip(std::size_t n, std::string_view what) { take(n, what); }

    std::size_t position() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return bytes_.size() - pos_; }
    bool at_end() const noexcept { return pos_ == bytes_.size(); }

private:
    template <class V>
    V read(std::string_view what) {
        require(sizeof(V), what);
        V v;
        std::memcpy(&v, bytes_.data() + pos_, sizeof v);
        pos_ += sizeof v;
        return v;
    }

    void require(std::size_t n, std::string_view what) {
        if (n > remaining()) {
            truncated(what, n);
        }
    }

    [[noreturn]] void truncated(std::string_view what, std::size_t wanted) const {
        throw ParseError("truncated " + std::string(what) + ": need " + std::to_string(wanted) +
                         " bytes at offset " + std::to_string(pos_) + ", have " +
                         std::to_string(remaining()));
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace emopool::detail
