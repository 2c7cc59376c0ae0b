// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

// Acceptance suite. One PASS/FAIL line per criterion; exits 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>

#include "emopool/train/metrics.hpp"
#include "emopool/train/schedule.hpp"
#include "support/audio_checks.hpp"
#include "support/ensemble_checks.hpp"
#include "support/fixtures.hpp"
#include "support/grad_suite.hpp"
#include "support/oracles.hpp"
#include "support/pooling_checks.hpp"
#include "support/training.hpp"

using namespace emopool;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(bool ok, const char* name, const std::string& detail) {
    std::printf("%s %-22s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

void gradient_suite() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    std::string worst_name;
    std::size_t checks = 0;
    for (const auto& entry : testing::gradient_suite()) {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto r = entry.check(seed);
            ++checks;
            if (r.max_rel_error > worst) {
                worst = r.max_rel_error;
                worst_name = entry.name;
            }
        }
    }
    const double secs = seconds_since(t0);
    report(worst < 1e-4 && secs < 30.0, "gradient-suite",
           fmt("%zu checks, worst rel error %.3g (%s), %.2f s", checks, worst, worst_name.c_str(), secs));
}

void pooling_invariants() {
    const auto r = testing::pooling_invariants(1000);
    // "Exact to float tolerance" for the u = 0 and T = 1 cases: a few ulps of
    // the frame values (scale up to 5).
    const bool ok = r.permutation <= 1e-6 && r.weight_sum <= 1e-6 && r.zero_query <= 1e-5 &&
                    r.single_frame == 0.0 && r.convex_hull == 0.0;
    report(ok, "pooling-invariants",
           fmt("1000 instances: perm %.2g, sum %.2g, u=0 %.2g, T=1 %.2g, hull %.2g", r.permutation,
               r.weight_sum, r.zero_query, r.single_frame, r.convex_hull));
}

void metric_oracle() {
    Rng rng(404);
    double worst = 0.0;
    for (int d = 0; d < 100; ++d) {
        std::vector<int> labels(1000), preds(1000);
        // Skill varies per dataset so some classes are never predicted.
        const double skill = rng.uniform(0.0, 0.95);
        for (std::size_t i = 0; i < labels.size(); ++i) {
            labels[i] = static_cast<int>(rng.below(6));
            preds[i] = rng.uniform() < skill ? labels[i] : static_cast<int>(rng.below(d % 7 == 0 ? 2 : 6));
        }
        const auto m = train::compute_metrics(train::ConfusionMatrix::from_predictions(labels, preds, 6));
        const auto o = testing::brute_force_scores(labels, preds, 6);
        auto upd = [&](double a, double b) { worst = std::max(worst, std::abs(a - b)); };
        upd(m.macro_f1, o.macro_f1);
        upd(m.accuracy, o.accuracy);
        for (std::size_t k = 0; k < 6; ++k) {
            upd(m.precision[k], o.precision[k]);
            upd(m.recall[k], o.recall[k]);
            upd(m.f1[k], o.f1[k]);
        }
    }
    report(worst <= 1e-12, "metric-oracle", fmt("100 datasets x 1000 samples, worst deviation %.3g", worst));
}

void ensemble_oracle() {
    const int mismatches = testing::enumerate_triples();
    const auto p = testing::vote_properties(10000);
    const bool ok = mismatches == 0 && p.unanimity_failures == 0 && p.permutation_failures == 0 &&
                    p.membership_failures == 0 && p.oracle_failures == 0;
    report(ok, "ensemble-oracle",
           fmt("216 triples x 6 orderings: %d mismatches; %d random cases: unanimity %d, permutation %d, "
               "membership %d, oracle %d failures",
               mismatches, p.cases, p.unanimity_failures, p.permutation_failures, p.membership_failures,
               p.oracle_failures));
}

void end_to_end() {
    const dataio::SyntheticSpec spec;  // 300/250/150/120/100/80, E = 64, separation 5, noise 1
    const auto data = testing::synthetic_split(spec);
    train::TrainConfig cfg;
    cfg.lr = 1e-3;
    cfg.max_epochs = 50;
    cfg.workers = 1;
    const auto t0 = Clock::now();
    const auto result = train::train(data.train, data.val, cfg);
    const double secs = seconds_since(t0);
    const double f1 = result.best.meta.best_val_macro_f1;
    report(f1 >= 0.95 && secs < 300.0, "end-to-end-synthetic",
           fmt("best val macro F1 %.4f at epoch %u of %zu run, %.1f s single-threaded", f1,
               result.best.meta.epoch, result.history.size(), secs));

    // 10:1 two-class variant. Each pair of runs shares data, split and seed;
    // the comparison uses the best checkpoints on 3300 held-out samples.
    int held_wins = 0, val_wins = 0;
    std::string detail;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto skewed = testing::skewed_pair(seed);
        const auto split = testing::synthetic_split(skewed, 0.15, seed);
        const auto test = testing::held_out(skewed, 300);
        train::TrainConfig c;
        c.lr = 1e-3;
        c.max_epochs = 50;
        c.seed = seed;
        c.class_weighting = true;
        const auto weighted = train::train(split.train, split.val, c);
        c.class_weighting = false;
        const auto plain = train::train(split.train, split.val, c);
        const double tw = train::evaluate(weighted.best.params, test).macro_f1;
        const double tp = train::evaluate(plain.best.params, test).macro_f1;
        held_wins += tp < tw ? 1 : 0;
        val_wins += plain.best.meta.best_val_macro_f1 < weighted.best.meta.best_val_macro_f1 ? 1 : 0;
        detail += fmt(" %.3f/%.3f", tw, tp);
    }
    report(held_wins >= 4, "class-weighting",
           fmt("unweighted lower in %d/5 seeds on held-out data (weighted/unweighted:%s); %d/5 on validation",
               held_wins, detail.c_str(), val_wins));
}

void schedule() {
    const train::ScheduleConfig sched;  // 5e-5, 0.9, 5
    auto state = train::TrainState::initial(sched);
    train::lr_schedule_step(state, 0.5, sched);
    std::vector<double> lrs;
    for (int e = 0; e < 10; ++e) {
        train::lr_schedule_step(state, 0.5, sched);
        lrs.push_back(state.lr);
    }
    // no decay before the fifth flat epoch, none between the two decays
    const bool ok = lrs[3] == 5e-5 && lrs[4] == 4.5e-5 && lrs[8] == 4.5e-5 && lrs[9] == 4.05e-5;
    report(ok, "schedule-conformance",
           fmt("after 5 flat epochs %.17g, after 10 %.17g", lrs[4], lrs[9]));
}

void audio_pipeline() {
    bool padding_ok = true;
    const bool lengths_ok = testing::crop_lengths(1, &padding_ok);
    const double snr = testing::worst_snr_error(100);
    const double peak = testing::worst_speed_peak_error_bins();
    const double lsb = testing::worst_roundtrip_lsb(50);
    report(lengths_ok && padding_ok && snr < 0.01 && peak <= 1.0 && lsb <= 1.0, "audio-pipeline",
           fmt("88000 samples for all lengths 1..200000: %s; padding identity: %s; SNR error %.2g dB; "
               "speed peak %.2f bins; WAV round-trip %.2f LSB",
               lengths_ok ? "yes" : "no", padding_ok ? "yes" : "no", snr, peak, lsb));
}

void determinism() {
    testing::TempDir dir("acceptance-determinism");
    auto synth = testing::run_cli({"synth", "--out", (dir / "data").string(), "--counts", "60,50,40,30,30,30",
                                   "--dim", "32", "--seed", "5"});
    testing::spit(dir / "run.cfg", "manifest = data/manifest.csv\nlr = 1e-3\nmax_epochs = 8\nseed = 11\n");
    const auto cfg = (dir / "run.cfg").string();
    bool ok = synth.code == 0;
    for (const auto& [out, workers] : {std::pair{"a", "1"}, {"b", "1"}, {"c", "4"}}) {
        ok = ok && testing::run_cli({"train", cfg, "--out", (dir / out).string(), "--workers", workers}).code == 0;
    }
    const auto a = testing::slurp(dir / "a/history.csv");
    const bool repeat = ok && !a.empty() && a == testing::slurp(dir / "b/history.csv");
    const bool workers = ok && a == testing::slurp(dir / "c/history.csv") &&
                         testing::slurp(dir / "a/best.ckpt") == testing::slurp(dir / "c/best.ckpt");
    report(repeat && workers, "determinism",
           fmt("repeat run identical: %s; --workers 4 vs 1 identical: %s", repeat ? "yes" : "no",
               workers ? "yes" : "no"));
}

}  // namespace

int main() {
    gradient_suite();
    pooling_invariants();
    metric_oracle();
    ensemble_oracle();
    end_to_end();
    schedule();
    audio_pipeline();
    determinism();
    std::printf("%d failed\n", failures);
    return failures == 0 ? 0 : 1;
}
