// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace emopool::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // runtime or data failure
inline constexpr int kExitUsage = 2;    // bad flags or config

// Entry point for `emopool <synth|augment|train|eval|ensemble> ...`.
// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace emopool::cli
