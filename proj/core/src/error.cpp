// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "hymap/error.hpp"

namespace hymap {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::EmptyLabel: return "EmptyLabel";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::SecondProduct: return "SecondProduct";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::IllegalEndpointPair: return "IllegalEndpointPair";
    case ErrorCode::MissingSign: return "MissingSign";
    case ErrorCode::UnexpectedSign: return "UnexpectedSign";
    case ErrorCode::WouldCreateCycle: return "WouldCreateCycle";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::ProductRemoval: return "ProductRemoval";
    case ErrorCode::InvalidMap: return "InvalidMap";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::StalePrompt: return "StalePrompt";
    case ErrorCode::SessionDone: return "SessionDone";
    case ErrorCode::PhaseError: return "PhaseError";
    case ErrorCode::NodeBudgetExceeded: return "NodeBudgetExceeded";
    case ErrorCode::ReplayDivergence: return "ReplayDivergence";
    case ErrorCode::UnknownHypothesis: return "UnknownHypothesis";
    case ErrorCode::ValidatedWithoutEvidence: return "ValidatedWithoutEvidence";
    case ErrorCode::DanglingAssessment: return "DanglingAssessment";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::SessionExpired: return "SessionExpired";
    case ErrorCode::Unauthorized: return "Unauthorized";
    case ErrorCode::AmbiguousHypothesis: return "AmbiguousHypothesis";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::vector<std::string> subjects,
             std::string location)
    : std::runtime_error(message), code_(code), subjects_(std::move(subjects)),
      location_(std::move(location)) {}

}  // namespace hymap
