// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "cli.hpp"

#include <iostream>
#include <unistd.h>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    hymap::cli::Io io{std::cin, std::cout, std::cerr, nullptr, isatty(STDOUT_FILENO) != 0};
    return hymap::cli::run(args, io);
}
