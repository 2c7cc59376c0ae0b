// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "emopool/errors.hpp"
#include "emopool/model/checkpoint.hpp"
#include "emopool/model/loss.hpp"
#include "emopool/model/model.hpp"
#include "support/grad_suite.hpp"
#include "support/pooling_checks.hpp"

using namespace emopool;
using namespace emopool::model;
using doctest::Approx;

TEST_SUITE("model") {

TEST_CASE("pooling init: Xavier bound and reproducibility") {
    CHECK(xavier_bound(1024, 1) == Approx(0.07651).epsilon(1e-4));
    CHECK(xavier_bound(1024, 1) == Approx(std::sqrt(6.0 / 1025.0)).epsilon(1e-15));
    Rng a(5), b(5);
    const auto u = init_pooling<double>(1024, a);
    CHECK(u == init_pooling<double>(1024, b));
    const double bound = xavier_bound(1024, 1);
    for (double x : u) {
        CHECK(std::abs(x) < bound);
    }
    Rng big(6);
    const auto many = init_pooling<double>(10000, big);
    const double a10k = xavier_bound(10000, 1);
    const double mean = std::accumulate(many.begin(), many.end(), 0.0) / 10000.0;
    CHECK(std::abs(mean) < 3.0 * a10k / std::sqrt(3.0 * 10000.0));
}

TEST_CASE("pooling forward examples") {
    SUBCASE("zero query gives uniform weights and the frame mean") {
        Tensor2D<double> h(4, 2, {1, 2, 3, 4, 5, 6, 7, 8});
        std::vector<double> u{0, 0};
        auto r = attn_pool_forward<double>(h, u);
        for (double w : r.w) {
            CHECK(w == 0.25);
        }
        CHECK(r.c[0] == Approx(4.0));
        CHECK(r.c[1] == Approx(5.0));
    }
    SUBCASE("one frame passes through") {
        Tensor2D<double> h(1, 3, {0.5, -2, 9});
        std::vector<double> u{3, 1, -4};
        auto r = attn_pool_forward<double>(h, u);
        CHECK(r.w == std::vector<double>{1.0});
        CHECK(r.c == std::vector<double>{0.5, -2, 9});
    }
    SUBCASE("E=1, h=[[0],[1]], u=[1]") {
        Tensor2D<double> h(2, 1, {0, 1});
        std::vector<double> u{1};
        auto r = attn_pool_forward<double>(h, u);
        const double e = std::exp(1.0);
        CHECK(r.w[0] == Approx(1.0 / (1.0 + e)).epsilon(1e-14));
        CHECK(r.w[0] == Approx(0.26894).epsilon(1e-4));
        CHECK(r.w[1] == Approx(0.73106).epsilon(1e-4));
        CHECK(r.c[0] == Approx(e / (1.0 + e)).epsilon(1e-14));
    }
    SUBCASE("identical frames return that frame for any query") {
        Rng rng(3);
        auto frame = testing::random_vector(6, rng);
        Tensor2D<double> h(5, 6);
        for (std::size_t t = 0; t < 5; ++t) {
            std::copy(frame.begin(), frame.end(), h.row(t).begin());
        }
        auto u = testing::random_vector(6, rng, 4.0);
        auto r = attn_pool_forward<double>(h, u);
        for (std::size_t j = 0; j < 6; ++j) {
            CHECK(r.c[j] == Approx(frame[j]).epsilon(1e-12));
        }
    }
    SUBCASE("bad shapes") {
        std::vector<double> u{1, 2};
        CHECK_THROWS_AS(attn_pool_forward<double>(Tensor2D<double>(0, 2), u), DimensionError);
        CHECK_THROWS_AS(attn_pool_forward<double>(Tensor2D<double>(3, 3), u), DimensionError);
    }
}

TEST_CASE("pooling invariants over random instances") {
    const auto r = testing::pooling_invariants(300);
    CHECK(r.permutation <= 1e-6);
    CHECK(r.weight_sum <= 1e-6);
    CHECK(r.zero_query <= 1e-6);
    CHECK(r.single_frame == 0.0);
    CHECK(r.convex_hull <= 1e-6);
}

TEST_CASE("pooling backward examples") {
    SUBCASE("T = 1: dh = dc, du = 0") {
        Tensor2D<double> h(1, 3, {0.3, -1, 2});
        std::vector<double> u{0.5, 0.1, -0.7}, dc{1, -2, 3};
        auto fwd = attn_pool_forward<double>(h, u);
        auto g = attn_pool_backward<double>(h, u, fwd.w, dc);
        CHECK(g.dh.values() == dc);
        for (double x : g.du) {
            CHECK(x == 0.0);
        }
    }
    SUBCASE("u = 0, dc = e_j matches finite differences") {
        for (std::size_t j = 0; j < 4; ++j) {
            Rng rng(j);
            Tensor2D<double> h = testing::random_matrix(6, 4, rng);
            std::vector<double> dc(4, 0.0);
            dc[j] = 1.0;
            auto value = [&](std::span<const double> u) {
                return attn_pool_forward<double>(h, u).c[j];
            };
            auto gradient = [&](std::span<const double> u) {
                auto fwd = attn_pool_forward<double>(h, u);
                return attn_pool_backward<double>(h, u, fwd.w, dc).du;
            };
            std::vector<double> zero(4, 0.0);
            CHECK(grad_check(value, gradient, zero).max_rel_error < 1e-4);
        }
    }
    SUBCASE("random T=7, E=16 points") {
        for (std::uint64_t s = 0; s < 20; ++s) {
            CHECK(testing::check_pooling(s, 7, 16).max_rel_error < 1e-4);
        }
    }
}

TEST_CASE("classifier and head") {
    const ModelShape shape{8, 16, 2, 6};
    auto params = init_model<double>(shape, 3);
    CHECK(params.shape() == shape);
    CHECK(params.parameter_count() == 8 + (8 * 16 + 16) + 2 * (16 * 16 + 3 * 16) + (16 * 6 + 6));
    Rng rng(1);
    const auto h = testing::random_matrix(5, 8, rng);

    SUBCASE("all-zero weights give uniform probabilities") {
        auto zero = zeros_like(params);
        auto logits = model_forward<double>(zero, h, 0.1, Mode::eval, rng);
        for (double l : logits) {
            CHECK(l == 0.0);
        }
        for (double p : softmax<double>(logits)) {
            CHECK(p == Approx(1.0 / 6.0).epsilon(1e-15));
        }
    }
    SUBCASE("eval mode is deterministic") {
        Rng a(10), b(99);
        CHECK(model_forward<double>(params, h, 0.1, Mode::eval, a) ==
              model_forward<double>(params, h, 0.1, Mode::eval, b));
    }
    SUBCASE("train mode with the same stream repeats") {
        Rng a(10), b(10), c(11);
        const auto x = model_forward<double>(params, h, 0.5, Mode::train, a);
        CHECK(x == model_forward<double>(params, h, 0.5, Mode::train, b));
        CHECK_FALSE(x == model_forward<double>(params, h, 0.5, Mode::train, c));
    }
    SUBCASE("init is reproducible per seed") {
        CHECK(testing::flatten(init_model<float>(shape, 3)) == testing::flatten(init_model<float>(shape, 3)));
        CHECK_FALSE(testing::flatten(init_model<float>(shape, 3)) == testing::flatten(init_model<float>(shape, 4)));
    }
    SUBCASE("wrong embedding dimension") {
        CHECK_THROWS_AS(model_forward<double>(params, testing::random_matrix(5, 9, rng), 0.0, Mode::eval, rng),
                        DimensionError);
    }
    SUBCASE("predict breaks ties toward the lower index") {
        std::vector<double> l{0.5, 2.0, 2.0, -1.0};
        CHECK(predict<double>(l) == 1);
        std::vector<double> flat(6, 0.0);
        CHECK(predict<double>(flat) == 0);
    }
}

TEST_CASE("end-to-end gradients at 20 seeded points") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        CAPTURE(s);
        CHECK(testing::check_head(s).max_rel_error < 1e-4);
    }
}

TEST_CASE("weighted cross-entropy examples") {
    const std::vector<double> ones(6, 1.0);
    std::vector<double> flat(6, 0.7);
    CHECK(weighted_cross_entropy<double>(flat, 2, ones).loss == Approx(std::log(6.0)).epsilon(1e-14));
    CHECK(weighted_cross_entropy<double>(flat, 2, ones).loss == Approx(1.7918).epsilon(1e-4));

    std::vector<double> two{0, 0}, w21{2, 1};
    auto s = weighted_cross_entropy<double>(two, 0, w21);
    CHECK(s.loss == Approx(2.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(s.loss == Approx(1.3863).epsilon(1e-4));
    CHECK(s.weight == 2.0);
    CHECK(s.dlogits[0] == Approx(-1.0));
    CHECK(s.dlogits[1] == Approx(1.0));

    std::vector<double> confident(6, 0.0);
    confident[0] = 100.0;
    CHECK(weighted_cross_entropy<double>(confident, 0, ones).loss < 1e-6);

    std::vector<double> w3{1, 1, 1};
    std::vector<double> l3{1, 2, 3};
    CHECK_THROWS_AS(weighted_cross_entropy<double>(l3, 3, w3), DimensionError);
    CHECK_THROWS_AS(weighted_cross_entropy<double>(l3, 0, ones), DimensionError);
}

TEST_CASE("weighted cross-entropy invariants") {
    Rng rng(12);
    const std::vector<double> ones(5, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        auto logits = testing::random_vector(5, rng, 3.0);
        const int y = static_cast<int>(rng.below(5));
        auto s = weighted_cross_entropy<double>(logits, y, ones);
        // plain cross-entropy from the definition
        double denom = 0.0;
        for (double l : logits) {
            denom += std::exp(l);
        }
        CHECK(s.loss == Approx(-std::log(std::exp(logits[y]) / denom)).epsilon(1e-12));
        CHECK(std::abs(std::accumulate(s.dlogits.begin(), s.dlogits.end(), 0.0)) < 1e-6);

        std::vector<double> w(5);
        for (auto& x : w) {
            x = rng.uniform(0.1, 4.0);
        }
        auto sw = weighted_cross_entropy<double>(logits, y, w);
        CHECK(sw.loss == Approx(w[y] * s.loss).epsilon(1e-12));
        CHECK(std::abs(std::accumulate(sw.dlogits.begin(), sw.dlogits.end(), 0.0)) < 1e-6 * w[y]);
    }
}

TEST_CASE("batch loss is normalized by the summed weights") {
    std::vector<std::vector<double>> logits{{0, 0}, {0, 0}, {0, 0}};
    std::vector<int> labels{0, 1, 1};
    std::vector<double> w{2, 1};
    auto b = batch_weighted_cross_entropy(logits, labels, w);
    CHECK(b.loss == Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(b.dlogits[0][0] == Approx(2.0 * -0.5 / 4.0));
}

TEST_CASE("class weights") {
    std::vector<std::size_t> a{10, 10}, b{100, 50, 50}, c{1, 1, 1, 1, 1, 1};
    CHECK(compute_class_weights(a) == std::vector<double>{1, 1});
    auto wb = compute_class_weights(b);
    CHECK(wb[0] == Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(wb[1] == Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(wb[2] == Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(compute_class_weights(c) == std::vector<double>(6, 1.0));
    std::vector<std::size_t> gap{4, 0, 2};
    CHECK_THROWS_AS(compute_class_weights(gap), TrainingError);
}

TEST_CASE("checkpoint round trip and validation") {
    Checkpoint ck{init_model<float>({8, 16, 3, 4}, 9), {0xDEADBEEFCAFEull, 0.8125, 17, {"a", "b", "c", "d"}}};
    const auto bytes = write_checkpoint(ck);
    const auto back = read_checkpoint(bytes);
    CHECK(back.params.shape() == ck.params.shape());
    CHECK(testing::flatten(back.params) == testing::flatten(ck.params));
    CHECK(back.meta.config_hash == ck.meta.config_hash);
    CHECK(back.meta.best_val_macro_f1 == 0.8125);
    CHECK(back.meta.epoch == 17);
    CHECK(back.meta.class_names == ck.meta.class_names);
    CHECK(write_checkpoint(back) == bytes);

    SUBCASE("bad magic") {
        auto b = bytes;
        b[0] = 'X';
        CHECK_THROWS_AS(read_checkpoint(b), ParseError);
    }
    SUBCASE("truncated") {
        for (std::size_t cut : {4ul, 20ul, bytes.size() / 2, bytes.size() - 1}) {
            std::vector<std::uint8_t> b(bytes.begin(), bytes.begin() + static_cast<long>(cut));
            CHECK_THROWS_AS(read_checkpoint(b), ParseError);
        }
    }
    SUBCASE("class count disagreeing with the output layer") {
        Checkpoint wrong = ck;
        wrong.meta.class_names.pop_back();
        CHECK_THROWS_AS(read_checkpoint(write_checkpoint(wrong)), ParseError);
    }
    SUBCASE("file helpers") {
        testing::TempDir dir("ckpt");
        save_checkpoint(dir / "m.ckpt", ck);
        CHECK(testing::flatten(load_checkpoint(dir / "m.ckpt").params) == testing::flatten(ck.params));
        CHECK_THROWS_AS(load_checkpoint(dir / "none.ckpt"), LoadError);
    }
}

}  // TEST_SUITE
