// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#include "emopool/train/trainer.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "emopool/detail/parallel.hpp"
#include "emopool/errors.hpp"
#include "emopool/model/loss.hpp"
#include "emopool/numerics/adamw.hpp"

namespace emopool::train {

namespace {

using Params = model::ModelParams<float>;

std::vector<Tensor2D<float>> fuse_all(const dataio::Dataset& ds) {
    std::vector<Tensor2D<float>> out;
    out.reserve(ds.samples.size());
    for (const auto& s : ds.samples) {
        out.push_back(dataio::fuse_modalities(s.speech, s.text));
    }
    return out;
}

std::size_t common_dim(const std::vector<Tensor2D<float>>& fused, const char* split) {
    const std::size_t dim = fused.front().cols();
    for (const auto& f : fused) {
        if (f.cols() != dim) {
            throw DimensionError(std::string(split) + " split mixes embedding dimensions " +
                                 std::to_string(dim) + " and " + std::to_string(f.cols()));
        }
    }
    return dim;
}

void zero(Params& p) {
    p.visit([](const std::string&, std::span<float> d, const auto&) {
        std::fill(d.begin(), d.end(), 0.0f);
    });
}

// dst += src * scale, tensor by tensor in visit order.
void add_scaled(Params& dst, const Params& src, float scale) {
    std::vector<std::span<const float>> sources;
    src.visit([&](const std::string&, std::span<const float> d, const auto&) { sources.push_back(d); });
    std::size_t i = 0;
    dst.visit([&](const std::string&, std::span<float> d, const auto&) {
        const auto s = sources[i++];
        for (std::size_t j = 0; j < d.size(); ++j) {
            d[j] += s[j] * scale;
        }
    });
}

Metrics evaluate_fused(const Params& params, const std::vector<Tensor2D<float>>& fused,
                       const std::vector<int>& labels, std::size_t num_classes, unsigned workers) {
    std::vector<int> preds(fused.size());
    detail::parallel_for(fused.size(), workers, [&](std::size_t i) {
        Rng unused(0);
        auto logits = model::model_forward<float>(params, fused[i], 0.0, Mode::eval, unused);
        preds[i] = model::predict<float>(logits);
    });
    return compute_metrics(ConfusionMatrix::from_predictions(labels, preds, num_classes));
}

std::vector<int> labels_of(const dataio::Dataset& ds) {
    std::vector<int> labels;
    labels.reserve(ds.samples.size());
    for (const auto& s : ds.samples) {
        labels.push_back(s.label);
    }
    return labels;
}

}  // namespace

void TrainConfig::validate() const {
    if (batch_size < 1) {
        throw ConfigError("batch_size must be >= 1");
    }
    if (!(lr > 0.0)) {
        throw ConfigError("lr must be positive");
    }
    if (!(lr_decay_factor > 0.0 && lr_decay_factor < 1.0)) {
        throw ConfigError("lr_decay_factor must be in (0, 1)");
    }
    if (plateau_epochs < 1) {
        throw ConfigError("plateau_epochs must be >= 1");
    }
    if (!(weight_decay >= 0.0)) {
        throw ConfigError("weight_decay must be non-negative");
    }
    if (!(dropout >= 0.0 && dropout < 1.0)) {
        throw ConfigError("dropout must be in [0, 1)");
    }
    if (!(aug_probability >= 0.0 && aug_probability <= 1.0)) {
        throw ConfigError("aug_probability must be in [0, 1]");
    }
    if (!(window_seconds > 0.0)) {
        throw ConfigError("window_seconds must be positive");
    }
    if (hidden_width < 1) {
        throw ConfigError("hidden_width must be >= 1");
    }
    if (max_epochs < 1) {
        throw ConfigError("max_epochs must be >= 1");
    }
    if (early_stop_patience < 1) {
        throw ConfigError("early_stop_patience must be >= 1");
    }
}

TrainResult train(const dataio::Dataset& train_set, const dataio::Dataset& val_set,
                  const TrainConfig& config, const ImprovementCallback& on_improvement,
                  std::uint64_t config_hash) {
    config.validate();
    if (train_set.samples.empty() || val_set.samples.empty()) {
        throw TrainingError("training and validation splits must both be nonempty");
    }
    if (!(train_set.classes == val_set.classes)) {
        throw ConfigError("training and validation class tables differ");
    }
    const std::size_t num_classes = train_set.classes.size();
    const auto counts = dataio::class_counts(train_set.samples, num_classes);
    for (std::size_t k = 0; k < num_classes; ++k) {
        if (counts[k] == 0) {
            throw TrainingError("class '" + train_set.classes.name(k) +
                                "' is absent from the training split");
        }
    }
    const std::vector<double> class_weights =
        config.class_weighting ? model::compute_class_weights(counts)
                               : std::vector<double>(num_classes, 1.0);

    const auto train_fused = fuse_all(train_set);
    const auto val_fused = fuse_all(val_set);
    const std::size_t dim = common_dim(train_fused, "training");
    if (common_dim(val_fused, "validation") != dim) {
        throw DimensionError("validation embedding dimension differs from training");
    }
    const auto val_labels = labels_of(val_set);

    const model::ModelShape shape{dim, config.hidden_width, config.hidden_layers, num_classes};
    Params params = model::init_model<float>(shape, config.seed);

    std::vector<AdamWState<float>> optim;
    const AdamWHyper hyper{config.lr, config.weight_decay};
    params.visit([&](const std::string&, std::span<const float> d, const auto&) {
        optim.emplace_back(d.size(), hyper);
    });

    const ScheduleConfig sched = config.schedule();
    TrainResult result;
    result.final_state = TrainState::initial(sched);
    TrainState& state = result.final_state;

    const std::size_t n = train_set.samples.size();
    std::vector<std::size_t> order(n);
    std::vector<Params> slot_grads(std::min(config.batch_size, n), model::zeros_like(params));
    std::vector<double> slot_loss(slot_grads.size());
    std::vector<double> slot_weight(slot_grads.size());
    Params batch_grad = model::zeros_like(params);

    for (std::uint32_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        Rng::stream(config.seed, "shuffle", epoch).shuffle(std::span<std::size_t>(order));

        double epoch_loss = 0.0;
        double epoch_weight = 0.0;
        std::size_t batch_index = 0;
        for (std::size_t start = 0; start < n; start += config.batch_size, ++batch_index) {
            const std::size_t count = std::min(config.batch_size, n - start);
            detail::parallel_for(count, config.workers, [&](std::size_t j) {
                const std::size_t idx = order[start + j];
                Params& g = slot_grads[j];
                zero(g);
                Rng rng = Rng::stream(config.seed, "dropout", epoch, idx);
                model::ForwardCache<float> cache;
                auto logits = model::model_forward<float>(params, train_fused[idx], config.dropout,
                                                          Mode::train, rng, &cache);
                auto loss = model::weighted_cross_entropy<float>(
                    logits, train_set.samples[idx].label, class_weights);
                slot_loss[j] = loss.loss;
                slot_weight[j] = loss.weight;
                model::model_backward<float>(params, train_fused[idx], cache, loss.dlogits, g);
            });

            double batch_loss = 0.0;
            double batch_weight = 0.0;
            for (std::size_t j = 0; j < count; ++j) {
                batch_loss += slot_loss[j];
                batch_weight += slot_weight[j];
            }
            if (!std::isfinite(batch_loss)) {
                throw TrainingError("non-finite loss at epoch " + std::to_string(epoch) +
                                    ", batch " + std::to_string(batch_index));
            }
            zero(batch_grad);
            for (std::size_t j = 0; j < count; ++j) {
                add_scaled(batch_grad, slot_grads[j], 1.0f);
            }
            epoch_loss += batch_loss;
            epoch_weight += batch_weight;

            const float inv_weight = static_cast<float>(1.0 / batch_weight);
            std::vector<std::span<const float>> grads;
            batch_grad.visit([&](const std::string&, std::span<float> d, const auto&) {
                for (auto& v : d) {
                    v *= inv_weight;
                }
                grads.push_back(d);
            });
            std::size_t t = 0;
            try {
                params.visit([&](const std::string& name, std::span<float> d, const auto&) {
                    optim[t].hyper.lr = state.lr;
                    try {
                        adamw_step<float>(d, grads[t], optim[t]);
                    } catch (const TrainingError& e) {
                        throw TrainingError(name + ": " + e.what());
                    }
                    ++t;
                });
            } catch (const TrainingError& e) {
                throw TrainingError("epoch " + std::to_string(epoch) + ", batch " +
                                    std::to_string(batch_index) + ": " + e.what());
            }
        }

        Metrics val = evaluate_fused(params, val_fused, val_labels, num_classes, config.workers);
        result.history.push_back({epoch, epoch_loss / epoch_weight, val.macro_f1, state.lr});
        const auto step = lr_schedule_step(state, val.macro_f1, sched);
        if (step.improved) {
            result.best.params = params;
            result.best.meta = {config_hash, val.macro_f1, epoch, train_set.classes.names()};
            result.best_val_metrics = val;
            if (on_improvement) {
                on_improvement(result.best, val);
            }
        }
        if (state.epochs_since_improvement >= config.early_stop_patience) {
            result.early_stopped = true;
            break;
        }
    }
    return result;
}

std::vector<int> predict_all(const model::ModelParams<float>& params, const dataio::Dataset& data,
                             unsigned workers) {
    const auto fused = fuse_all(data);
    std::vector<int> preds(fused.size());
    detail::parallel_for(fused.size(), workers, [&](std::size_t i) {
        Rng unused(0);
        auto logits = model::model_forward<float>(params, fused[i], 0.0, Mode::eval, unused);
        preds[i] = model::predict<float>(logits);
    });
    return preds;
}

Metrics evaluate(const model::ModelParams<float>& params, const dataio::Dataset& data,
                 unsigned workers) {
    if (data.samples.empty()) {
        throw ConfigError("cannot evaluate an empty dataset");
    }
    if (params.shape().num_classes != data.classes.size()) {
        throw DimensionError("model predicts " + std::to_string(params.shape().num_classes) +
                             " classes, dataset has " + std::to_string(data.classes.size()));
    }
    return evaluate_fused(params, fuse_all(data), labels_of(data), data.classes.size(), workers);
}

std::string history_csv(const std::vector<EpochRecord>& history) {
    std::string out = "epoch,train_loss,val_macro_f1,lr\n";
    char line[128];
    for (const auto& r : history) {
        std::snprintf(line, sizeof line, "%u,%.17g,%.17g,%.17g\n", r.epoch, r.train_loss,
                      r.val_macro_f1, r.lr);
        out += line;
    }
    return out;
}

}  // namespace emopool::train
