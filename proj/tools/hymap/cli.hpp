// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hymap::cli {

enum ExitCode : int { kOk = 0, kDomainError = 1, kParseError = 2, kUsageError = 3 };

/// Resolved before any subcommand runs.
struct CliConfig {
    std::filesystem::path map_file;
    std::optional<std::filesystem::path> assessments;
    std::string format;
    bool color = false;
    bool non_interactive = false;
};

struct Io {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
    /// Environment lookup; defaults to std::getenv.
    std::function<const char*(const char*)> getenv;
    /// Color is only used when the output is a terminal.
    bool tty = false;
};

/// Runs one command line (args[0] is the program name).
int run(const std::vector<std::string>& args, Io& io);

}  // namespace hymap::cli
