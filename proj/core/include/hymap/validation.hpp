// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#pragma once

#include "hymap/model.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace hymap {

enum class Severity { Error, Warning };

std::string_view to_string(Severity severity) noexcept;

/// One finding from validate(). `code` is a stable identifier such as
/// "Cycle" or "OrphanFeature".
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::vector<std::string> subjects;
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Checks every map invariant (errors) and the structural-gap rules
/// (warnings). The result is ordered by (severity, code, subjects).
///
/// Error codes: NoProduct, MultipleProducts, EmptyLabel, DuplicateLabel,
/// DuplicateId, DanglingEdge, SelfLoop, IllegalEndpointPair, EdgeKindMismatch,
/// MissingSign, UnexpectedSign, DuplicateEdge, Cycle.
/// Warning codes: OrphanFeature, UnreachableConcept, CustomerWithoutProblems.
std::vector<Diagnostic> validate(const CognitiveMap& map);

/// [{severity, code, subjects, message}]
nlohmann::json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics);

bool has_errors(const std::vector<Diagnostic>& diagnostics) noexcept;

/// Features lacking an incoming offering edge or an outgoing influence edge.
std::vector<std::string> orphan_features(const CognitiveMap& map);

/// Concepts that no feature reaches through influence edges and that no
/// customer perceives.
std::vector<std::string> unreachable_concepts(const CognitiveMap& map);

/// Customers with no perception edge.
std::vector<std::string> customers_without_problems(const CognitiveMap& map);

/// One directed cycle per non-trivial strongly connected component, each as a
/// closed node path (first id repeated at the end).
std::vector<std::vector<std::string>> find_cycles(const CognitiveMap& map);

}  // namespace hymap
