// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "emopool/dataio/manifest.hpp"
#include "emopool/model/checkpoint.hpp"
#include "emopool/train/metrics.hpp"
#include "emopool/train/schedule.hpp"

namespace emopool::train {

struct TrainConfig {
    std::size_t batch_size = 16;
    double lr = 5e-5;
    double lr_decay_factor = 0.9;
    std::uint32_t plateau_epochs = 5;
    double weight_decay = 0.01;
    double dropout = 0.1;
    // Audio-side knobs. Precomputed feature inputs bypass the waveform
    // pipeline, so these are carried for provenance only.
    double aug_probability = 0.3;
    double window_seconds = 5.5;
    std::size_t hidden_width = 256;
    std::size_t hidden_layers = 2;
    std::uint32_t max_epochs = 100;
    std::uint32_t early_stop_patience = 15;
    std::uint64_t seed = 0;
    bool class_weighting = true;
    // Worker threads for per-sample forward/backward and evaluation. Results
    // do not depend on this value.
    unsigned workers = 1;

    void validate() const;
    ScheduleConfig schedule() const { return {lr, lr_decay_factor, plateau_epochs}; }
};

struct EpochRecord {
    std::uint32_t epoch = 0;
    double train_loss = 0.0;
    double val_macro_f1 = 0.0;
    double lr = 0.0;  // rate used during this epoch
};

struct TrainResult {
    model::Checkpoint best;
    Metrics best_val_metrics;
    std::vector<EpochRecord> history;
    TrainState final_state;
    bool early_stopped = false;
};

using ImprovementCallback = std::function<void(const model::Checkpoint&, const Metrics&)>;

// Mini-batch AdamW on weighted cross-entropy with validation-driven LR decay,
// checkpoint-on-improvement and early stopping. Throws TrainingError when a
// class is absent from the training split or the loss becomes non-finite.
TrainResult train(const dataio::Dataset& train_set, const dataio::Dataset& val_set,
                  const TrainConfig& config, const ImprovementCallback& on_improvement = {},
                  std::uint64_t config_hash = 0);

// Eval mode (no dropout, full sequences), argmax with ties to the lower index.
std::vector<int> predict_all(const model::ModelParams<float>& params, const dataio::Dataset& data,
                             unsigned workers = 1);
Metrics evaluate(const model::ModelParams<float>& params, const dataio::Dataset& data,
                 unsigned workers = 1);

// "epoch,train_loss,val_macro_f1,lr" with 17 significant digits.
std::string history_csv(const std::vector<EpochRecord>& history);

}  // namespace emopool::train
