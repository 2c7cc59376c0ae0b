// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#include <doctest.h>

#include <cstring>
#include <filesystem>

#include "emopool/dataio/features.hpp"
#include "emopool/dataio/manifest.hpp"
#include "emopool/dataio/synthetic.hpp"
#include "emopool/errors.hpp"
#include "support/fixtures.hpp"

using namespace emopool;
using namespace emopool::dataio;

namespace {

FeatureSequence seq(Modality m, std::size_t t, std::size_t e, float base) {
    Tensor2D<float> v(t, e);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v.flat()[i] = base + static_cast<float>(i) * 0.25f;
    }
    return {m, v};
}

}  // namespace

TEST_SUITE("dataio") {

TEST_CASE("EMOF: T=2, E=3 is 40 bytes with the documented header") {
    const auto f = seq(Modality::text, 2, 3, -1.0f);
    const auto bytes = write_features(f);
    REQUIRE(bytes.size() == 40);
    CHECK(std::memcmp(bytes.data(), "EMOF", 4) == 0);
    CHECK(bytes[4] == 1);  // version, little-endian u16
    CHECK(bytes[5] == 0);
    CHECK(bytes[6] == 1);  // text
    CHECK(bytes[8] == 2);  // frames
    CHECK(bytes[12] == 3);  // dim
    float first = 0.0f;
    std::memcpy(&first, bytes.data() + 16, 4);
    CHECK(first == -1.0f);
}

TEST_CASE("EMOF: round trip is bit-identical and sizes follow 16 + 4TE") {
    Rng rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t t = 1 + rng.below(20), e = 1 + rng.below(40);
        FeatureSequence f{trial % 2 == 0 ? Modality::speech : Modality::text,
                          testing::random_matrix<float>(t, e, rng)};
        const auto bytes = write_features(f);
        CHECK(bytes.size() == 16 + 4 * t * e);
        const auto back = read_features(bytes);
        CHECK(back.modality == f.modality);
        CHECK(back.values == f.values);
    }
}

TEST_CASE("EMOF: malformed input") {
    auto bytes = write_features(seq(Modality::speech, 2, 3, 0.0f));
    SUBCASE("EMOG magic") {
        auto b = bytes;
        b[3] = 'G';
        CHECK_THROWS_WITH_AS(read_features(b), doctest::Contains("magic"), ParseError);
    }
    SUBCASE("payload too short") {
        auto b = bytes;
        b.pop_back();
        CHECK_THROWS_AS(read_features(b), ParseError);
    }
    SUBCASE("trailing bytes") {
        auto b = bytes;
        b.push_back(0);
        CHECK_THROWS_AS(read_features(b), ParseError);
    }
    SUBCASE("unknown modality") {
        auto b = bytes;
        b[6] = 7;
        CHECK_THROWS_AS(read_features(b), ParseError);
    }
    SUBCASE("zero frames") {
        auto b = bytes;
        b[8] = 0;
        b.resize(16);
        CHECK_THROWS_AS(read_features(b), ParseError);
    }
    SUBCASE("wrong version") {
        auto b = bytes;
        b[4] = 2;
        CHECK_THROWS_AS(read_features(b), ParseError);
    }
}

TEST_CASE("fuse_modalities") {
    const auto sp = seq(Modality::speech, 4, 1024, 1.0f);
    const auto tx = seq(Modality::text, 3, 1024, -7.0f);
    const auto fused = fuse_modalities(sp, tx);
    REQUIRE(fused.rows() == 7);
    REQUIRE(fused.cols() == 1024);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 1024; ++c) {
            REQUIRE(fused(r, c) == sp.values(r, c));
        }
    }
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 1024; ++c) {
            REQUIRE(fused(4 + r, c) == tx.values(r, c));
        }
    }
    CHECK_THROWS_AS(fuse_modalities(sp, seq(Modality::text, 3, 768, 0.0f)), DimensionError);
    FeatureSequence empty_text{Modality::text, Tensor2D<float>(0, 1024)};
    CHECK(fuse_modalities(sp, empty_text) == sp.values);
    FeatureSequence empty_speech{Modality::speech, Tensor2D<float>(0, 1024)};
    CHECK_THROWS_AS(fuse_modalities(empty_speech, FeatureSequence{Modality::text, Tensor2D<float>(0, 1024)}),
                    DimensionError);
}

TEST_CASE("class table") {
    const auto c = ClassTable::canonical();
    CHECK(c.names() == std::vector<std::string>{"neutral", "disgust", "anger", "joy", "sadness", "fear"});
    CHECK(c.index_of("fear") == 5);
    CHECK(c.index_of("surprise") == -1);
    CHECK(ClassTable::parse(c.serialize()) == c);
    CHECK(ClassTable::parse("a\nb\r\nc\n").names() == std::vector<std::string>{"a", "b", "c"});
    // Line position is the class index, so a blank line in the middle is an error.
    CHECK_THROWS_AS(ClassTable::parse("a\n\nc\n"), ConfigError);
    CHECK_THROWS_AS(ClassTable::parse("a\nb\na\n"), ConfigError);
    CHECK_THROWS_AS(ClassTable::parse(""), ConfigError);
}

TEST_CASE("manifest parsing") {
    auto recs = parse_manifest("id,speech,text,label\na,s/a.emof,t/a.emof,joy\nb,s/b.emof,t/b.emof,fear\n");
    REQUIRE(recs.size() == 2);
    CHECK(recs[1].id == "b");
    CHECK(recs[1].label == "fear");
    CHECK(parse_manifest(write_manifest(recs)).size() == 2);
    CHECK_THROWS_AS(parse_manifest("id,path,label\n"), LoadError);
    CHECK_THROWS_WITH_AS(parse_manifest("id,speech,text,label\na,b,c,joy\nx,y\n"),
                         doctest::Contains("record 2"), LoadError);
}

struct ManifestFixture {
    testing::TempDir dir{"manifest"};
    ManifestFixture() {
        std::filesystem::create_directories(dir / "f");
        for (const char* id : {"u1", "u2", "u3"}) {
            save_features(dir / (std::string("f/") + id + ".s"), seq(Modality::speech, 3, 4, 1.0f));
            save_features(dir / (std::string("f/") + id + ".t"), seq(Modality::text, 2, 4, 2.0f));
        }
    }
    std::filesystem::path write(const std::string& body) {
        const auto p = dir / "m.csv";
        testing::spit(p, "id,speech,text,label\n" + body);
        return p;
    }
};

TEST_CASE_FIXTURE(ManifestFixture, "manifest loading") {
    const auto classes = ClassTable::canonical();
    SUBCASE("three valid records load in file order") {
        auto ds = load_manifest(write("u3,f/u3.s,f/u3.t,joy\nu1,f/u1.s,f/u1.t,anger\nu2,f/u2.s,f/u2.t,fear\n"),
                                classes);
        REQUIRE(ds.samples.size() == 3);
        CHECK(ds.samples[0].id == "u3");
        CHECK(ds.samples[0].label == 3);
        CHECK(ds.samples[1].label == 2);
        CHECK(ds.samples[2].label == 5);
        CHECK(ds.samples[2].speech.frames() == 3);
        CHECK(ds.classes == classes);
        CHECK(class_counts(ds.samples, 6) == std::vector<std::size_t>{0, 0, 1, 1, 0, 1});
    }
    SUBCASE("missing file names record 2") {
        CHECK_THROWS_WITH_AS(load_manifest(write("u1,f/u1.s,f/u1.t,joy\nu2,f/nope.s,f/u2.t,joy\n"), classes),
                             doctest::Contains("record 2"), LoadError);
    }
    SUBCASE("duplicate id") {
        CHECK_THROWS_WITH_AS(load_manifest(write("u1,f/u1.s,f/u1.t,joy\nu1,f/u2.s,f/u2.t,joy\n"), classes),
                             doctest::Contains("duplicate id"), LoadError);
    }
    SUBCASE("unknown label") {
        CHECK_THROWS_WITH_AS(load_manifest(write("u1,f/u1.s,f/u1.t,surprise\n"), classes),
                             doctest::Contains("unknown label"), LoadError);
    }
    SUBCASE("speech and text swapped") {
        CHECK_THROWS_AS(load_manifest(write("u1,f/u1.t,f/u1.s,joy\n"), classes), LoadError);
    }
}

TEST_CASE("synthetic generation") {
    SyntheticSpec spec;
    spec.counts = {12, 10, 8, 6, 5, 4};
    spec.dim = 16;
    const auto a = gen_synthetic(spec);
    const auto b = gen_synthetic(spec);
    REQUIRE(a.size() == 45);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(a[i].speech.values == b[i].speech.values);
        CHECK(a[i].text.values == b[i].text.values);
    }
    CHECK(class_counts(a, 6) == std::vector<std::size_t>(spec.counts.begin(), spec.counts.end()));
    for (const auto& s : a) {
        CHECK(s.speech.dim() == 16);
        CHECK(s.speech.frames() >= 8);
        CHECK(s.speech.frames() <= 24);
        CHECK(s.text.frames() >= 2);
        CHECK(s.text.frames() <= 8);
        CHECK(s.speech.modality == Modality::speech);
        CHECK(s.text.modality == Modality::text);
    }
    // A sample depends only on (seed, class, index), not on generation order.
    const auto lone = gen_synthetic_sample(spec, 3, 4);
    const auto& inside = a[12 + 10 + 8 + 4];
    CHECK(lone.id == inside.id);
    CHECK(lone.speech.values == inside.speech.values);
    CHECK(lone.label == 3);

    SyntheticSpec other = spec;
    other.seed = 1;
    CHECK_FALSE(gen_synthetic(other)[0].speech.values == a[0].speech.values);

    SyntheticSpec bad = spec;
    bad.counts.pop_back();
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    CHECK_THROWS_AS(gen_synthetic(bad), ConfigError);
}

}  // TEST_SUITE
