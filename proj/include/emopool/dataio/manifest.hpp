// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "emopool/dataio/features.hpp"

namespace emopool::dataio {

// Label names; line number (0-based) is the class index.
class ClassTable {
public:
    ClassTable() = default;
    explicit ClassTable(std::vector<std::string> names);

    // neutral, disgust, anger, joy, sadness, fear
    static ClassTable canonical();
    static ClassTable parse(std::string_view text);
    static ClassTable load(const std::filesystem::path& path);

    std::string serialize() const;

    int index_of(std::string_view name) const noexcept;
    const std::string& name(std::size_t index) const { return names_.at(index); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::size_t size() const noexcept { return names_.size(); }

    friend bool operator==(const ClassTable&, const ClassTable&) = default;

private:
    std::vector<std::string> names_;
};

struct ManifestRecord {
    std::string id;
    std::string speech;
    std::string text;
    std::string label;
};

// CSV with header "id,speech,text,label"; fields may not contain commas.
std::vector<ManifestRecord> parse_manifest(std::string_view text);
std::string write_manifest(const std::vector<ManifestRecord>& records);

struct Dataset {
    ClassTable classes;
    std::vector<Sample> samples;
};

// Loads every referenced feature file (paths relative to the manifest's
// directory) and resolves labels. Errors name the 1-based record number.
Dataset load_manifest(const std::filesystem::path& path, const ClassTable& classes);

// Number of samples per class index.
std::vector<std::size_t> class_counts(const std::vector<Sample>& samples, std::size_t num_classes);

}  // namespace emopool::dataio
