// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "emopool/ensemble/vote.hpp"
#include "emopool/numerics/rng.hpp"
#include "oracles.hpp"

namespace emopool::testing {

// All 6^3 triples under every ordering of three distinct validation scores.
// Returns the number of disagreements with the oracle (out of 216 * 6).
inline int enumerate_triples() {
    const std::vector<std::vector<double>> orders{{0.8, 0.9, 0.7}, {0.9, 0.8, 0.7}, {0.7, 0.8, 0.9},
                                                  {0.7, 0.9, 0.8}, {0.9, 0.7, 0.8}, {0.8, 0.7, 0.9}};
    int mismatches = 0;
    for (const auto& f1 : orders) {
        for (int a = 0; a < 6; ++a) {
            for (int b = 0; b < 6; ++b) {
                for (int c = 0; c < 6; ++c) {
                    const std::vector<int> preds{a, b, c};
                    mismatches += ensemble::hard_vote(preds, f1) != majority_else_best(preds, f1) ? 1 : 0;
                }
            }
        }
    }
    return mismatches;
}

struct VotePropertyReport {
    int cases = 0;
    int unanimity_failures = 0;
    int permutation_failures = 0;
    int membership_failures = 0;
    int oracle_failures = 0;  // three-member cases only
};

// Random cases over M in {3, 5, 7} and 6 classes.
inline VotePropertyReport vote_properties(int cases, std::uint64_t seed = 99) {
    VotePropertyReport rep;
    Rng rng(seed);
    for (int n = 0; n < cases; ++n) {
        const std::size_t m = 3 + 2 * rng.below(3);
        std::vector<int> preds(m);
        std::vector<double> f1(m);
        for (std::size_t i = 0; i < m; ++i) {
            f1[i] = (static_cast<double>(i) + rng.uniform()) / static_cast<double>(m);
        }
        rng.shuffle(std::span<double>(f1));
        const bool unanimous = rng.bernoulli(0.1);
        const int shared = static_cast<int>(rng.below(6));
        for (auto& p : preds) {
            p = unanimous ? shared : static_cast<int>(rng.below(6));
        }
        const int out = ensemble::hard_vote(preds, f1);
        ++rep.cases;
        if (unanimous && out != shared) {
            ++rep.unanimity_failures;
        }
        if (std::find(preds.begin(), preds.end(), out) == preds.end()) {
            ++rep.membership_failures;
        }
        if (m == 3 && out != majority_else_best(preds, f1)) {
            ++rep.oracle_failures;
        }
        std::vector<std::size_t> perm(m);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        rng.shuffle(std::span<std::size_t>(perm));
        std::vector<int> pp(m);
        std::vector<double> pf(m);
        for (std::size_t i = 0; i < m; ++i) {
            pp[i] = preds[perm[i]];
            pf[i] = f1[perm[i]];
        }
        if (ensemble::hard_vote(pp, pf) != out) {
            ++rep.permutation_failures;
        }
    }
    return rep;
}

}  // namespace emopool::testing
