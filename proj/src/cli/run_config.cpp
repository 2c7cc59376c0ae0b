// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#include "emopool/cli/run_config.hpp"

#include <charconv>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "emopool/detail/bytes.hpp"
#include "emopool/errors.hpp"
#include "emopool/numerics/rng.hpp"

namespace emopool::cli {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* expected) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as " + expected);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) {
            bad_value(key, v, "a number");
        }
        return d;
    } catch (const std::logic_error&) {
        bad_value(key, v, "a number");
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        bad_value(key, v, "a non-negative integer");
    }
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no") {
        return false;
    }
    bad_value(key, v, "a boolean");
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::filesystem::path&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        auto path = [](std::filesystem::path RunConfig::*member) {
            return [member](RunConfig& c, const std::string& v, const std::filesystem::path& base) {
                std::filesystem::path p(v);
                c.*member = (p.empty() || p.is_absolute() || base.empty()) ? p : base / p;
            };
        };
        t["manifest"] = path(&RunConfig::manifest);
        t["val_manifest"] = path(&RunConfig::val_manifest);
        t["classes"] = path(&RunConfig::classes);
        t["out_dir"] = path(&RunConfig::out_dir);
        t["split_fraction"] = [](RunConfig& c, const std::string& v, const auto&) {
            c.split_fraction = to_double("split_fraction", v);
        };
        t["split_seed"] = [](RunConfig& c, const std::string& v, const auto&) {
            c.split_seed = to_u64("split_seed", v);
        };
        auto dbl = [](double train::TrainConfig::*member, const char* key) {
            return [member, key](RunConfig& c, const std::string& v, const auto&) {
                c.train.*member = to_double(key, v);
            };
        };
        t["lr"] = dbl(&train::TrainConfig::lr, "lr");
        t["lr_decay_factor"] = dbl(&train::TrainConfig::lr_decay_factor, "lr_decay_factor");
        t["weight_decay"] = dbl(&train::TrainConfig::weight_decay, "weight_decay");
        t["dropout"] = dbl(&train::TrainConfig::dropout, "dropout");
        t["aug_probability"] = dbl(&train::TrainConfig::aug_probability, "aug_probability");
        t["window_seconds"] = dbl(&train::TrainConfig::window_seconds, "window_seconds");
        t["batch_size"] = [](RunConfig& c, const std::string& v, const auto&) {
            c.train.batch_size = to_u64("batch_size", v);
        };
        t["hidden_width"] = [](RunConfig& c, const std::string& v, const auto&) {
            c.train.hidden_width = to_u64("hidden_width", v);
        };
        t["hidden_layers"] = [](RunConfig& c, const std::string& v, const auto&) {
            c.train.hidden_layers = to_u64("hidden_layers", v);
        };
        t["plateau_epochs"] = [](RunConfig& c, const std::string& v, const auto&) {
            c.train.plateau_epochs = static_cast<std::uint32_t>(to_u64("plateau_epochs", v));
        };
        t["max_epochs"] = [](RunConfig& c, const std::string& v, const auto&) {
            c.train.max_epochs = static_cast<std::uint32_t>(to_u64("max_epochs", v));
        };
        t["early_stop_patience"] = [](RunConfig& c, const std::string& v, const auto&) {
            c.train.early_stop_patience = static_cast<std::uint32_t>(to_u64("early_stop_patience", v));
        };
        t["seed"] = [](RunConfig& c, const std::string& v, const auto&) {
            c.train.seed = to_u64("seed", v);
        };
        t["workers"] = [](RunConfig& c, const std::string& v, const auto&) {
            c.train.workers = static_cast<unsigned>(to_u64("workers", v));
        };
        t["class_weighting"] = [](RunConfig& c, const std::string& v, const auto&) {
            c.train.class_weighting = to_bool("class_weighting", v);
        };
        return t;
    }();
    return table;
}

std::string resolved_text(const RunConfig& c, bool include_run_local) {
    const auto& t = c.train;
    std::ostringstream out;
    out << "manifest = " << c.manifest.string() << "\n";
    out << "val_manifest = " << c.val_manifest.string() << "\n";
    out << "classes = " << c.classes.string() << "\n";
    out << "split_fraction = " << fmt_double(c.split_fraction) << "\n";
    out << "split_seed = " << c.split_seed << "\n";
    if (include_run_local) {
        out << "out_dir = " << c.out_dir.string() << "\n";
    }
    out << "batch_size = " << t.batch_size << "\n";
    out << "lr = " << fmt_double(t.lr) << "\n";
    out << "lr_decay_factor = " << fmt_double(t.lr_decay_factor) << "\n";
    out << "plateau_epochs = " << t.plateau_epochs << "\n";
    out << "weight_decay = " << fmt_double(t.weight_decay) << "\n";
    out << "dropout = " << fmt_double(t.dropout) << "\n";
    out << "aug_probability = " << fmt_double(t.aug_probability) << "\n";
    out << "window_seconds = " << fmt_double(t.window_seconds) << "\n";
    out << "hidden_width = " << t.hidden_width << "\n";
    out << "hidden_layers = " << t.hidden_layers << "\n";
    out << "max_epochs = " << t.max_epochs << "\n";
    out << "early_stop_patience = " << t.early_stop_patience << "\n";
    out << "seed = " << t.seed << "\n";
    out << "class_weighting = " << (t.class_weighting ? "true" : "false") << "\n";
    if (include_run_local) {
        out << "workers = " << t.workers << "\n";
    }
    return out.str();
}

}  // namespace

void RunConfig::validate() const {
    if (manifest.empty()) {
        throw ConfigError("config key 'manifest' is required");
    }
    if (val_manifest.empty() && !(split_fraction > 0.0 && split_fraction < 1.0)) {
        throw ConfigError("split_fraction must be in (0, 1)");
    }
    if (out_dir.empty()) {
        throw ConfigError("out_dir must not be empty");
    }
    if (train.workers < 1) {
        throw ConfigError("workers must be >= 1");
    }
    train.validate();
}

std::string RunConfig::resolved() const {
    return resolved_text(*this, true);
}

std::uint64_t RunConfig::hash() const {
    return fnv1a64(resolved_text(*this, false));
}

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir) {
    RunConfig cfg;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string body = trim(line);
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) {
            throw ConfigError("unknown config key '" + key + "' (line " + std::to_string(lineno) + ")");
        }
        if (!seen.insert(key).second) {
            throw ConfigError("config key '" + key + "' given twice");
        }
        it->second(cfg, value, base_dir);
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::vector<std::uint8_t> bytes;
    try {
        bytes = detail::read_file(path);
    } catch (const LoadError& e) {
        throw ConfigError(e.what());
    }
    return parse_run_config(std::string(bytes.begin(), bytes.end()), path.parent_path());
}

}  // namespace emopool::cli
