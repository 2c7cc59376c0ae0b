// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include "emopool/cli/commands.hpp"
#include "emopool/model/model.hpp"
#include "emopool/numerics/rng.hpp"
#include "emopool/numerics/tensor.hpp"

namespace emopool::testing {

// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("emopool-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::vector<double> random_vector(std::size_t n, Rng& rng, double scale = 1.0) {
    std::vector<double> v(n);
    for (auto& x : v) {
        x = scale * rng.normal();
    }
    return v;
}

template <class T = double>
Tensor2D<T> random_matrix(std::size_t rows, std::size_t cols, Rng& rng, double scale = 1.0) {
    Tensor2D<T> m(rows, cols);
    for (auto& x : m.flat()) {
        x = static_cast<T>(scale * rng.normal());
    }
    return m;
}

template <class T>
std::vector<double> flatten(const model::ModelParams<T>& p) {
    std::vector<double> out;
    p.visit([&](const std::string&, auto d, const auto&) { out.insert(out.end(), d.begin(), d.end()); });
    return out;
}

template <class T>
void unflatten(model::ModelParams<T>& p, std::span<const double> values) {
    std::size_t i = 0;
    p.visit([&](const std::string&, std::span<T> d, const auto&) {
        for (auto& x : d) {
            x = static_cast<T>(values[i++]);
        }
    });
}

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

inline CliResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "emopool");
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

}  // namespace emopool::testing
