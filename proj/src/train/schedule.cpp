// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#include "emopool/train/schedule.hpp"

#include <cmath>

namespace emopool::train {

ScheduleStep lr_schedule_step(TrainState& state, double val_macro_f1, const ScheduleConfig& cfg) {
    ScheduleStep step;
    state.epoch += 1;
    if (val_macro_f1 > state.best_val_macro_f1) {
        state.best_val_macro_f1 = val_macro_f1;
        state.epochs_since_improvement = 0;
        state.plateau_counter = 0;
        step.improved = true;
        return step;
    }
    state.epochs_since_improvement += 1;
    state.plateau_counter += 1;
    if (state.plateau_counter >= cfg.plateau_epochs) {
        state.plateau_counter = 0;
        state.decays += 1;
        state.lr = cfg.initial_lr * std::pow(cfg.decay_factor, static_cast<double>(state.decays));
        step.decayed = true;
    }
    return step;
}

}  // namespace emopool::train
