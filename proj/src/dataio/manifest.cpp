// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#include "emopool/dataio/manifest.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "emopool/detail/bytes.hpp"
#include "emopool/errors.hpp"

namespace emopool::dataio {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string line(text.substr(start, end - start));
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        lines.push_back(std::move(line));
        if (end == text.size()) {
            break;
        }
        start = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

std::string read_text(const std::filesystem::path& path) {
    const auto bytes = detail::read_file(path);
    return {bytes.begin(), bytes.end()};
}

}  // namespace

ClassTable::ClassTable(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) {
        throw ConfigError("class table is empty");
    }
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) {
            throw ConfigError("class table contains an empty name");
        }
        if (!seen.insert(n).second) {
            throw ConfigError("class table lists '" + n + "' twice");
        }
    }
}

ClassTable ClassTable::canonical() {
    return ClassTable({"neutral", "disgust", "anger", "joy", "sadness", "fear"});
}

ClassTable ClassTable::parse(std::string_view text) {
    return ClassTable(split_lines(text));
}

ClassTable ClassTable::load(const std::filesystem::path& path) {
    return parse(read_text(path));
}

std::string ClassTable::serialize() const {
    std::string out;
    for (const auto& n : names_) {
        out += n;
        out += '\n';
    }
    return out;
}

int ClassTable::index_of(std::string_view name) const noexcept {
    auto it = std::find(names_.begin(), names_.end(), name);
    return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

std::vector<ManifestRecord> parse_manifest(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty() || lines.front() != "id,speech,text,label") {
        throw LoadError("manifest header must be 'id,speech,text,label'");
    }
    std::vector<ManifestRecord> records;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) {
            continue;
        }
        auto fields = split_fields(lines[i]);
        if (fields.size() != 4) {
            throw LoadError("record " + std::to_string(records.size() + 1) + ": expected 4 fields, got " +
                            std::to_string(fields.size()));
        }
        records.push_back({fields[0], fields[1], fields[2], fields[3]});
    }
    return records;
}

std::string write_manifest(const std::vector<ManifestRecord>& records) {
    std::string out = "id,speech,text,label\n";
    for (const auto& r : records) {
        out += r.id + ',' + r.speech + ',' + r.text + ',' + r.label + '\n';
    }
    return out;
}

Dataset load_manifest(const std::filesystem::path& path, const ClassTable& classes) {
    const auto records = parse_manifest(read_text(path));
    const auto base = path.parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp : base / fp;
    };

    Dataset ds{classes, {}};
    std::unordered_set<std::string> ids;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        const std::string where = "record " + std::to_string(i + 1);
        if (rec.id.empty()) {
            throw LoadError(where + ": empty id");
        }
        if (!ids.insert(rec.id).second) {
            throw LoadError(where + ": duplicate id '" + rec.id + "'");
        }
        const int label = classes.index_of(rec.label);
        if (label < 0) {
            throw LoadError(where + ": unknown label '" + rec.label + "'");
        }
        Sample s;
        s.id = rec.id;
        s.label = label;
        try {
            s.speech = load_features(resolve(rec.speech));
            s.text = load_features(resolve(rec.text));
        } catch (const Error& e) {
            throw LoadError(where + ": " + e.what());
        }
        if (s.speech.modality != Modality::speech || s.text.modality != Modality::text) {
            throw LoadError(where + ": modality tags do not match the speech/text columns");
        }
        if (s.speech.dim() != s.text.dim()) {
            throw LoadError(where + ": speech dim " + std::to_string(s.speech.dim()) +
                            " differs from text dim " + std::to_string(s.text.dim()));
        }
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

std::vector<std::size_t> class_counts(const std::vector<Sample>& samples, std::size_t num_classes) {
    std::vector<std::size_t> counts(num_classes, 0);
    for (const auto& s : samples) {
        counts.at(static_cast<std::size_t>(s.label)) += 1;
    }
    return counts;
}

}  // namespace emopool::dataio
