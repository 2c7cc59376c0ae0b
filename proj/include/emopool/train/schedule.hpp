// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>

namespace emopool::train {

struct ScheduleConfig {
    double initial_lr = 5e-5;
    double decay_factor = 0.9;
    std::uint32_t plateau_epochs = 5;
};

// Mutable schedule and early-stopping state. The plateau counter (drives LR
// decay) and the non-improvement counter (drives early stopping) are kept
// separately: a decay resets the former only.
struct TrainState {
    std::uint32_t epoch = 0;
    double lr = 5e-5;
    double best_val_macro_f1 = -1.0;  // below any attainable score
    std::uint32_t epochs_since_improvement = 0;
    std::uint32_t plateau_counter = 0;
    std::uint32_t decays = 0;

    static TrainState initial(const ScheduleConfig& cfg) {
        TrainState s;
        s.lr = cfg.initial_lr;
        return s;
    }
};

struct ScheduleStep {
    bool improved = false;
    bool decayed = false;
};

// Strict improvement of validation macro F1 resets both counters. Otherwise
// both increment; when the plateau counter reaches plateau_epochs the LR
// becomes initial_lr * decay_factor^decays and the plateau counter resets.
ScheduleStep lr_schedule_step(TrainState& state, double val_macro_f1, const ScheduleConfig& cfg);

}  // namespace emopool::train
