// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "emopool/errors.hpp"

namespace emopool {

// Dense row-major matrix. Training runs on Tensor2D<float>; gradient
// verification instantiates everything with double.
template <class T>
class Tensor2D {
public:
    using value_type = T;

    Tensor2D() = default;

    Tensor2D(std::size_t rows, std::size_t cols, T fill = T{0})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Tensor2D(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            throw DimensionError("tensor data length " + std::to_string(data_.size()) +
                                 " does not match shape " + std::to_string(rows_) + "x" +
                                 std::to_string(cols_));
        }
    }

    // Checked construction: additionally rejects NaN and infinities.
    static Tensor2D checked(std::size_t rows, std::size_t cols, std::vector<T> data) {
        Tensor2D t(rows, cols, std::move(data));
        auto bad = std::find_if(t.data_.begin(), t.data_.end(),
                                [](T v) { return !std::isfinite(v); });
        if (bad != t.data_.end()) {
            auto idx = static_cast<std::size_t>(bad - t.data_.begin());
            throw DimensionError("non-finite value at row " + std::to_string(idx / cols) +
                                 ", col " + std::to_string(idx % cols));
        }
        return t;
    }

    static Tensor2D row_vector(std::vector<T> data) {
        const std::size_t n = data.size();
        return Tensor2D(1, n, std::move(data));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const noexcept {
        return data_[r * cols_ + c];
    }

    std::span<T> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const noexcept {
        return {data_.data() + r * cols_, cols_};
    }

    std::span<T> flat() noexcept { return data_; }
    std::span<const T> flat() const noexcept { return data_; }
    const std::vector<T>& values() const noexcept { return data_; }

    void fill(T v) { std::fill(data_.begin(), data_.end(), v); }

    bool all_finite() const {
        return std::all_of(data_.begin(), data_.end(), [](T v) { return std::isfinite(v); });
    }

    template <class U>
    Tensor2D<U> cast() const {
        std::vector<U> out(data_.begin(), data_.end());
        return Tensor2D<U>(rows_, cols_, std::move(out));
    }

    friend bool operator==(const Tensor2D&, const Tensor2D&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

inline std::string shape_string(std::size_t rows, std::size_t cols) {
    return std::to_string(rows) + "x" + std::to_string(cols);
}

}  // namespace emopool
