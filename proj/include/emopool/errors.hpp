// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <stdexcept>
#include <string>

namespace emopool {

// Base for every error raised by the library. The CLI maps ConfigError to
// exit code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shapes that do not chain (matrix products, fusion of mismatched embeddings).
class DimensionError : public Error {
public:
    using Error::Error;
};

// Malformed bytes: WAV containers, EMOF feature files, checkpoints.
class ParseError : public Error {
public:
    using Error::Error;
};

// Invalid hyperparameters, unknown config keys, bad ensemble membership.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Members of an ensemble, or a checkpoint and a dataset, that cannot be
// combined (different class tables or embedding dimensions). Reported by
// the CLI as a data failure rather than a usage error.
class CompatibilityError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Dataset-level failures: missing files, duplicate ids, unknown labels.
class LoadError : public Error {
public:
    using Error::Error;
};

// Numerical failures during optimization (non-finite loss or gradient),
// or a training split that cannot be used.
class TrainingError : public Error {
public:
    using Error::Error;
};

}  // namespace emopool
