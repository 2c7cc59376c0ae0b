// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#include <iostream>
#include <string>
#include <vector>

#include "emopool/cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return emopool::cli::run(args, std::cout, std::cerr);
}
