// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hymap {

/// Stable error identifiers. The string form (see to_string) is part of the
/// CLI and HTTP contracts and must not change.
enum class ErrorCode {
    // core model
    EmptyLabel,
    DuplicateLabel,
    SecondProduct,
    UnknownId,
    IllegalEndpointPair,
    MissingSign,
    UnexpectedSign,
    WouldCreateCycle,
    DuplicateEdge,
    ProductRemoval,
    InvalidMap,
    // interchange
    SchemaViolation,
    UnsupportedVersion,
    DanglingReference,
    ParseError,
    // elicitation
    ShapeMismatch,
    StalePrompt,
    SessionDone,
    PhaseError,
    NodeBudgetExceeded,
    ReplayDivergence,
    // registry
    UnknownHypothesis,
    ValidatedWithoutEvidence,
    DanglingAssessment,
    CorruptFile,
    // service
    SessionExpired,
    Unauthorized,
    AmbiguousHypothesis,
    // io
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Domain failure. `subjects` carries the ids involved (for a cycle, the
/// offending node path); `location` carries a JSON pointer, prompt id or
/// file position when one applies.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::vector<std::string> subjects = {},
          std::string location = {});

    ErrorCode code() const noexcept { return code_; }
    const std::vector<std::string>& subjects() const noexcept { return subjects_; }
    const std::string& location() const noexcept { return location_; }

private:
    ErrorCode code_;
    std::vector<std::string> subjects_;
    std::string location_;
};

}  // namespace hymap
