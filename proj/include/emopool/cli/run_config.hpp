// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "emopool/train/trainer.hpp"

namespace emopool::cli {

// Contents of a `train` config file. Format: UTF-8 lines of `key = value`,
// `#` starts a comment, blank lines ignored, unknown or repeated keys are
// errors. Relative paths resolve against the config file's directory.
//
//   key                  default      meaning
//   manifest             (required)   training manifest CSV
//   val_manifest         (empty)      explicit validation manifest; disables splitting
//   classes              (empty)      class table; empty = classes.txt beside the
//                                     manifest if present, else the six canonical emotions
//   split_fraction       0.15         stratified validation fraction
//   split_seed           0            seeds the split; kept apart from `seed` so runs
//                                     that differ only in seed share one split
//   out_dir              run          output directory
//   batch_size           16
//   lr                   5e-05
//   lr_decay_factor      0.9
//   plateau_epochs       5
//   weight_decay         0.01
//   dropout              0.1
//   aug_probability      0.3
//   window_seconds       5.5
//   hidden_width         256
//   hidden_layers        2
//   max_epochs           100
//   early_stop_patience  15
//   seed                 0
//   class_weighting      true
//   workers              1
struct RunConfig {
    std::filesystem::path manifest;
    std::filesystem::path val_manifest;
    std::filesystem::path classes;
    double split_fraction = 0.15;
    std::uint64_t split_seed = 0;
    std::filesystem::path out_dir = "run";
    train::TrainConfig train;

    void validate() const;

    // Every key with its effective value, one per line, in a fixed order.
    std::string resolved() const;

    // FNV-1a of the resolved text without `out_dir` and `workers`, which do
    // not influence results.
    std::uint64_t hash() const;
};

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace emopool::cli
