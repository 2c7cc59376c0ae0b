// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#include "emopool/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "emopool/audio/augment.hpp"
#include "emopool/audio/preprocess.hpp"
#include "emopool/audio/wav.hpp"
#include "emopool/cli/run_config.hpp"
#include "emopool/dataio/synthetic.hpp"
#include "emopool/detail/bytes.hpp"
#include "emopool/detail/parallel.hpp"
#include "emopool/ensemble/vote.hpp"
#include "emopool/errors.hpp"
#include "emopool/numerics/rng.hpp"
#include "emopool/train/split.hpp"
#include "emopool/train/trainer.hpp"

namespace emopool::cli {

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& text) {
    detail::write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

void make_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw LoadError("cannot create directory " + dir.string() + ": " + ec.message());
    }
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

struct SynthOptions {
    std::string classes_path;
    std::vector<std::size_t> counts{300, 250, 150, 120, 100, 80};
    std::size_t dim = 64;
    std::vector<std::size_t> speech_frames{8, 24};
    std::vector<std::size_t> text_frames{2, 8};
    double separation = 5.0;
    double noise = 1.0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_synth(const SynthOptions& o, std::ostream& out) {
    dataio::SyntheticSpec spec;
    if (!o.classes_path.empty()) {
        spec.classes = dataio::ClassTable::load(o.classes_path);
    }
    if (o.speech_frames.size() != 2 || o.text_frames.size() != 2) {
        throw ConfigError("frame ranges take exactly two values: min,max");
    }
    spec.counts = o.counts;
    spec.dim = o.dim;
    spec.speech_frames_min = o.speech_frames[0];
    spec.speech_frames_max = o.speech_frames[1];
    spec.text_frames_min = o.text_frames[0];
    spec.text_frames_max = o.text_frames[1];
    spec.separation = o.separation;
    spec.noise = o.noise;
    spec.seed = o.seed;
    spec.validate();

    const fs::path root(o.out);
    make_dir(root / "features");
    const auto samples = dataio::gen_synthetic(spec);
    std::vector<dataio::ManifestRecord> records;
    std::map<std::size_t, std::size_t> histogram;
    constexpr std::size_t kBucket = 4;
    for (const auto& s : samples) {
        const std::string speech = "features/" + s.id + ".speech.emof";
        const std::string text = "features/" + s.id + ".text.emof";
        dataio::save_features(root / speech, s.speech);
        dataio::save_features(root / text, s.text);
        records.push_back({s.id, speech, text, spec.classes.name(static_cast<std::size_t>(s.label))});
        histogram[(s.speech.frames() + s.text.frames()) / kBucket] += 1;
    }
    write_text(root / "manifest.csv", dataio::write_manifest(records));
    write_text(root / "classes.txt", spec.classes.serialize());

    out << "wrote " << samples.size() << " samples (dim " << spec.dim << ") to " << root.string() << "\n";
    out << "per-class counts:\n";
    for (std::size_t k = 0; k < spec.classes.size(); ++k) {
        char line[96];
        std::snprintf(line, sizeof line, "  %-12s %6zu\n", spec.classes.name(k).c_str(), spec.counts[k]);
        out << line;
    }
    out << "fused frame-count histogram:\n";
    const std::size_t peak = std::max_element(histogram.begin(), histogram.end(), [](auto& a, auto& b) {
                                 return a.second < b.second;
                             })->second;
    for (const auto& [bucket, n] : histogram) {
        char line[64];
        std::snprintf(line, sizeof line, "  %3zu-%-3zu %6zu ", bucket * kBucket, bucket * kBucket + kBucket - 1, n);
        out << line << std::string((n * 40 + peak - 1) / peak, '#') << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// augment
// ---------------------------------------------------------------------------

struct AugmentOptions {
    std::string in_dir;
    std::string out;
    double probability = 0.3;
    std::vector<double> speed_factors{0.9, 1.0, 1.1};
    double t60_min = 0.1;
    double t60_max = 0.5;
    double snr_min = 5.0;
    double snr_max = 20.0;
    std::string noise_dir;
    std::uint64_t seed = 0;
    std::uint64_t epoch = 0;
    unsigned workers = 1;
};

std::vector<fs::path> list_wavs(const fs::path& dir) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        throw LoadError("not a directory: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".wav") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

audio::Waveform load_at_default_rate(const fs::path& path) {
    auto w = audio::load_wav(path);
    return audio::resample(w, audio::kDefaultSampleRate);
}

int cmd_augment(const AugmentOptions& o, std::ostream& out, std::ostream& err) {
    audio::AugmentChain chain;
    chain.probability = o.probability;
    chain.speed_factors = o.speed_factors;
    chain.t60_min = o.t60_min;
    chain.t60_max = o.t60_max;
    chain.snr_min_db = o.snr_min;
    chain.snr_max_db = o.snr_max;
    chain.validate();
    if (o.workers < 1) {
        throw ConfigError("--workers must be >= 1");
    }
    std::vector<std::string> noise_names;
    if (!o.noise_dir.empty()) {
        for (const auto& p : list_wavs(o.noise_dir)) {
            chain.noise_bank.push_back(load_at_default_rate(p));
            noise_names.push_back(p.filename().string());
        }
    }

    const auto files = list_wavs(o.in_dir);
    make_dir(o.out);
    struct Result {
        std::string log;
        std::string transform;
        std::string error;
    };
    std::vector<Result> results(files.size());
    detail::parallel_for(files.size(), o.workers, [&](std::size_t i) {
        const auto name = files[i].filename().string();
        try {
            const auto w = load_at_default_rate(files[i]);
            const auto outcome = audio::maybe_augment(w, chain, o.seed, o.epoch, fnv1a64(name), Mode::train);
            audio::save_wav(fs::path(o.out) / name, outcome.waveform);
            const std::string param =
                outcome.transform == audio::Transform::none ? "" : fmt("%.17g", outcome.parameter);
            std::string noise;
            if (outcome.transform == audio::Transform::noise) {
                noise = outcome.noise_index < 0 ? "white"
                                                : noise_names[static_cast<std::size_t>(outcome.noise_index)];
            }
            results[i].transform = audio::transform_name(outcome.transform);
            results[i].log = name + "," + audio::transform_name(outcome.transform) + "," + param + "," + noise + "\n";
        } catch (const Error& e) {
            results[i].error = e.what();
            results[i].log = name + ",error,,\n";
        }
    });

    std::string log = "file,transform,parameter,noise\n";
    std::size_t failures = 0;
    std::map<std::string, std::size_t> tally;
    for (const auto& r : results) {
        log += r.log;
        if (!r.error.empty()) {
            err << "error: " << r.error << "\n";
            ++failures;
        } else {
            tally[r.transform]++;
        }
    }
    write_text(fs::path(o.out) / "augment_log.csv", log);
    out << "processed " << files.size() << " files:";
    for (const auto& [t, n] : tally) {
        out << " " << t << "=" << n;
    }
    out << "\n";
    if (failures > 0) {
        err << failures << " of " << files.size() << " files failed\n";
        return kExitFailure;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct TrainOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<unsigned> workers;
};

dataio::ClassTable resolve_classes(const fs::path& explicit_path, const fs::path& manifest) {
    if (!explicit_path.empty()) {
        return dataio::ClassTable::load(explicit_path);
    }
    const auto beside = manifest.parent_path() / "classes.txt";
    std::error_code ec;
    if (fs::is_regular_file(beside, ec)) {
        return dataio::ClassTable::load(beside);
    }
    return dataio::ClassTable::canonical();
}

std::string read_text(const fs::path& path) {
    const auto bytes = detail::read_file(path);
    return std::string(bytes.begin(), bytes.end());
}

// Manifest rows for the chosen indices with feature paths made absolute, so
// the split files can be fed back to `eval` from any directory.
std::string subset_manifest(const std::vector<dataio::ManifestRecord>& records,
                            const std::vector<std::size_t>& indices, const fs::path& base) {
    std::vector<dataio::ManifestRecord> rows;
    rows.reserve(indices.size());
    for (auto i : indices) {
        auto r = records[i];
        r.speech = fs::absolute(base / r.speech).lexically_normal().string();
        r.text = fs::absolute(base / r.text).lexically_normal().string();
        rows.push_back(std::move(r));
    }
    return dataio::write_manifest(rows);
}

dataio::Dataset pick(const dataio::Dataset& all, const std::vector<std::size_t>& indices) {
    dataio::Dataset d{all.classes, {}};
    d.samples.reserve(indices.size());
    for (auto i : indices) {
        d.samples.push_back(all.samples[i]);
    }
    return d;
}

int cmd_train(const TrainOptions& o, std::ostream& out) {
    RunConfig cfg = load_run_config(o.config);
    if (o.seed) {
        cfg.train.seed = *o.seed;
    }
    if (o.out) {
        cfg.out_dir = *o.out;
    }
    if (o.workers) {
        cfg.train.workers = *o.workers;
    }
    cfg.validate();

    const auto classes = resolve_classes(cfg.classes, cfg.manifest);
    const fs::path out_dir = cfg.out_dir;
    make_dir(out_dir);
    write_text(out_dir / "config.resolved", cfg.resolved());

    dataio::Dataset train_set;
    dataio::Dataset val_set;
    const auto all = dataio::load_manifest(cfg.manifest, classes);
    const auto records = dataio::parse_manifest(read_text(cfg.manifest));
    const auto base = cfg.manifest.parent_path();
    if (!cfg.val_manifest.empty()) {
        train_set = all;
        val_set = dataio::load_manifest(cfg.val_manifest, classes);
        std::vector<std::size_t> every(all.samples.size());
        std::iota(every.begin(), every.end(), std::size_t{0});
        write_text(out_dir / "split_train.csv", subset_manifest(records, every, base));
        const auto val_records = dataio::parse_manifest(read_text(cfg.val_manifest));
        std::vector<std::size_t> every_val(val_records.size());
        std::iota(every_val.begin(), every_val.end(), std::size_t{0});
        write_text(out_dir / "split_val.csv",
                   subset_manifest(val_records, every_val, cfg.val_manifest.parent_path()));
    } else {
        const auto split =
            train::stratified_split(all.samples, classes.size(), cfg.split_fraction, cfg.split_seed);
        train_set = pick(all, split.train);
        val_set = pick(all, split.val);
        write_text(out_dir / "split_train.csv", subset_manifest(records, split.train, base));
        write_text(out_dir / "split_val.csv", subset_manifest(records, split.val, base));
    }
    out << "train " << train_set.samples.size() << " samples, validation " << val_set.samples.size()
        << " samples, " << classes.size() << " classes\n";

    const fs::path ckpt_path = out_dir / "best.ckpt";
    auto on_improvement = [&](const model::Checkpoint& ckpt, const train::Metrics&) {
        model::save_checkpoint(ckpt_path, ckpt);
    };
    const auto result = train::train(train_set, val_set, cfg.train, on_improvement, cfg.hash());

    write_text(out_dir / "history.csv", train::history_csv(result.history));
    const auto report = train::format_report(result.best_val_metrics, classes.names());
    write_text(out_dir / "metrics.txt", report);
    write_text(out_dir / "confusion.csv", train::confusion_csv(result.best_val_metrics.confusion, classes.names()));

    out << "epochs run " << result.history.size() << (result.early_stopped ? " (early stop)" : "")
        << ", best epoch " << result.best.meta.epoch << ", best validation macro F1 "
        << fmt("%.4f", result.best.meta.best_val_macro_f1) << "\n";
    out << report;
    out << "wrote " << ckpt_path.string() << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// eval / ensemble
// ---------------------------------------------------------------------------

struct EvalOptions {
    std::string checkpoint;
    std::string manifest;
    std::string classes;
    std::string out;
    unsigned workers = 1;
};

// The checkpoint's class table wins; an explicit table must match it.
dataio::ClassTable classes_for(const model::Checkpoint& ckpt, const std::string& explicit_path) {
    dataio::ClassTable table(ckpt.meta.class_names);
    if (!explicit_path.empty() && !(dataio::ClassTable::load(explicit_path) == table)) {
        throw CompatibilityError("class table " + explicit_path + " differs from the checkpoint's");
    }
    return table;
}

void check_dims(const model::Checkpoint& ckpt, const dataio::Dataset& data, const std::string& name) {
    const std::size_t e = ckpt.params.shape().embed_dim;
    for (const auto& s : data.samples) {
        if (s.speech.dim() != e) {
            throw CompatibilityError(name + " expects embedding dim " + std::to_string(e) + ", sample " +
                                     s.id + " has " + std::to_string(s.speech.dim()));
        }
    }
}

void write_reports(const std::string& out_dir, const train::Metrics& m, const std::vector<std::string>& names,
                   const std::string& report) {
    if (out_dir.empty()) {
        return;
    }
    make_dir(out_dir);
    write_text(fs::path(out_dir) / "metrics.txt", report);
    write_text(fs::path(out_dir) / "confusion.csv", train::confusion_csv(m.confusion, names));
}

int cmd_eval(const EvalOptions& o, std::ostream& out) {
    if (o.workers < 1) {
        throw ConfigError("--workers must be >= 1");
    }
    const auto ckpt = model::load_checkpoint(o.checkpoint);
    const auto classes = classes_for(ckpt, o.classes);
    const auto data = dataio::load_manifest(o.manifest, classes);
    check_dims(ckpt, data, o.checkpoint);
    const auto m = train::evaluate(ckpt.params, data, o.workers);
    const auto report = train::format_report(m, classes.names());
    out << report;
    write_reports(o.out, m, classes.names(), report);
    return kExitOk;
}

struct EnsembleOptions {
    std::vector<std::string> checkpoints;
    std::string manifest;
    std::string classes;
    std::string out;
    unsigned workers = 1;
};

int cmd_ensemble(const EnsembleOptions& o, std::ostream& out) {
    if (o.workers < 1) {
        throw ConfigError("--workers must be >= 1");
    }
    if (o.checkpoints.size() < 3 || o.checkpoints.size() % 2 == 0) {
        throw ConfigError("ensemble needs an odd number of at least 3 checkpoints, got " +
                          std::to_string(o.checkpoints.size()));
    }
    std::vector<ensemble::EnsembleMember> members;
    for (const auto& path : o.checkpoints) {
        members.push_back({path, model::load_checkpoint(path)});
    }
    const auto classes = classes_for(members.front().checkpoint, o.classes);
    const auto data = dataio::load_manifest(o.manifest, classes);
    for (const auto& m : members) {
        check_dims(m.checkpoint, data, m.name);
    }
    const auto report = ensemble::ensemble_evaluate(members, data, o.workers);

    std::size_t width = 8;
    for (const auto& m : members) {
        width = std::max(width, m.name.size());
    }
    char line[64];
    out << std::string(width, ' ') << "   val F1   macro F1   accuracy\n";
    for (std::size_t i = 0; i < members.size(); ++i) {
        std::snprintf(line, sizeof line, "   %6.2f%%    %6.2f%%     %6.2f%%\n", 100.0 * members[i].val_macro_f1(),
                      100.0 * report.members[i].macro_f1, 100.0 * report.members[i].accuracy);
        out << members[i].name << std::string(width - members[i].name.size(), ' ') << line;
    }
    std::snprintf(line, sizeof line, "         -    %6.2f%%     %6.2f%%\n", 100.0 * report.ensemble.macro_f1,
                  100.0 * report.ensemble.accuracy);
    out << "ensemble" << std::string(width - 8, ' ') << line << "\n";
    const auto text = train::format_report(report.ensemble, classes.names());
    out << text;
    write_reports(o.out, report.ensemble, classes.names(), text);
    return kExitOk;
}

int exit_code_for(const Error& e) {
    if (dynamic_cast<const CompatibilityError*>(&e) != nullptr) {
        return kExitFailure;
    }
    if (dynamic_cast<const ConfigError*>(&e) != nullptr) {
        return kExitUsage;
    }
    return kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Attention-pooled emotion classifier over precomputed speech/text features"};
    app.name(args.empty() ? "emopool" : fs::path(args[0]).filename().string());
    app.require_subcommand(1);

    SynthOptions synth;
    auto* s = app.add_subcommand("synth", "Generate a synthetic feature dataset");
    s->add_option("--out", synth.out, "Output directory")->required();
    s->add_option("--classes", synth.classes_path, "Class table (one name per line)");
    s->add_option("--counts", synth.counts, "Samples per class")->delimiter(',');
    s->add_option("--dim", synth.dim, "Embedding dimension");
    s->add_option("--speech-frames", synth.speech_frames, "Speech frame range min,max")->delimiter(',');
    s->add_option("--text-frames", synth.text_frames, "Text frame range min,max")->delimiter(',');
    s->add_option("--separation", synth.separation, "Norm of each class mean");
    s->add_option("--noise", synth.noise, "Per-frame noise standard deviation");
    s->add_option("--seed", synth.seed, "Random seed");

    AugmentOptions aug;
    std::vector<double> t60{aug.t60_min, aug.t60_max};
    std::vector<double> snr{aug.snr_min, aug.snr_max};
    auto* a = app.add_subcommand("augment", "Apply the streaming augmentation chain to a WAV directory");
    a->add_option("--in", aug.in_dir, "Input WAV directory")->required();
    a->add_option("--out", aug.out, "Output directory")->required();
    a->add_option("--probability", aug.probability, "Chance that a file is transformed");
    a->add_option("--speed-factors", aug.speed_factors, "Speed factors")->delimiter(',');
    a->add_option("--t60", t60, "Reverb T60 range in seconds min,max")->delimiter(',');
    a->add_option("--snr", snr, "Noise SNR range in dB min,max")->delimiter(',');
    a->add_option("--noise-dir", aug.noise_dir, "Directory of background noise WAVs");
    a->add_option("--seed", aug.seed, "Random seed");
    a->add_option("--epoch", aug.epoch, "Epoch index mixed into the random stream");
    a->add_option("--workers", aug.workers, "Worker threads");

    TrainOptions tr;
    std::string config_positional;
    auto* t = app.add_subcommand("train", "Train a model from a config file");
    t->add_option("--config", tr.config, "Config file");
    t->add_option("config_file", config_positional, "Config file (positional form)");
    t->add_option("--seed", tr.seed, "Override the config's seed");
    t->add_option("--out", tr.out, "Override the config's out_dir");
    t->add_option("--workers", tr.workers, "Override the config's workers");

    EvalOptions ev;
    auto* e = app.add_subcommand("eval", "Evaluate one checkpoint on a manifest");
    e->add_option("--checkpoint", ev.checkpoint, "Checkpoint file")->required();
    e->add_option("--manifest", ev.manifest, "Manifest CSV")->required();
    e->add_option("--classes", ev.classes, "Class table to check against the checkpoint");
    e->add_option("--out", ev.out, "Directory for metrics.txt and confusion.csv");
    e->add_option("--workers", ev.workers, "Worker threads");

    EnsembleOptions en;
    auto* n = app.add_subcommand("ensemble", "Hard-vote an odd number of checkpoints");
    n->add_option("checkpoints", en.checkpoints, "Checkpoint files")->required();
    n->add_option("--manifest", en.manifest, "Manifest CSV")->required();
    n->add_option("--classes", en.classes, "Class table to check against the checkpoints");
    n->add_option("--out", en.out, "Directory for metrics.txt and confusion.csv");
    n->add_option("--workers", en.workers, "Worker threads");

    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::ParseError& pe) {
        const int code = app.exit(pe, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (s->parsed()) {
            return cmd_synth(synth, out);
        }
        if (a->parsed()) {
            if (t60.size() != 2 || snr.size() != 2) {
                throw ConfigError("--t60 and --snr take exactly two values: min,max");
            }
            aug.t60_min = t60[0];
            aug.t60_max = t60[1];
            aug.snr_min = snr[0];
            aug.snr_max = snr[1];
            return cmd_augment(aug, out, err);
        }
        if (t->parsed()) {
            if (tr.config.empty() == config_positional.empty()) {
                throw ConfigError("train needs exactly one config file (--config PATH or positional)");
            }
            if (tr.config.empty()) {
                tr.config = config_positional;
            }
            return cmd_train(tr, out);
        }
        if (e->parsed()) {
            return cmd_eval(ev, out);
        }
        return cmd_ensemble(en, out);
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return exit_code_for(ex);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace emopool::cli
