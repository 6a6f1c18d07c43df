// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#pragma once

#include "hymap/analysis.hpp"
#include "hymap/assessment.hpp"
#include "hymap/model.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hymap {

/// A testable statement compiled from exactly one map edge.
struct Hypothesis {
    std::string id;
    std::string edge_id;
    HypothesisKind kind = HypothesisKind::Value;
    std::string generated_text;
    /// Hand-smoothed wording. Never produced by the generator.
    std::optional<std::string> edited_text;
    /// Set when the generated text drifted away from what edited_text was
    /// written against.
    bool stale = false;

    const std::string& statement() const noexcept { return edited_text ? *edited_text : generated_text; }

    friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

/// "+" -> "increases", "-" -> "decreases", "o" -> "does not affect".
std::string_view verb_for(Sign sign) noexcept;

/// Template text for one edge:
///   offering:   the team developing <product> is capable of implementing <feature>
///   influence:  <feature or problem> <increases|decreases|does not affect> <problem>
///   perception: <customer segment> <has|would like to> <problem>
/// Throws UnknownId if an endpoint is missing.
std::string hypothesis_text(const CognitiveMap& map, const MapEdge& edge);

/// Hypothesis id bound to an edge id.
std::string hypothesis_id_for(std::string_view edge_id);

/// One hypothesis per edge, in edge creation order. Throws InvalidMap.
std::vector<Hypothesis> generate(const CognitiveMap& map);

/// Keeps ids and edited_text for surviving edges, flags them stale when the
/// generated text changed, drops hypotheses of removed edges and appends
/// fresh ones for new edges. Output follows edge creation order.
std::vector<Hypothesis> regenerate(const CognitiveMap& map, const std::vector<Hypothesis>& previous);

using AssessmentIndex = std::map<std::string, Assessment, std::less<>>;

/// Experimentation order: unvalidated before validated; then problem, value,
/// product; then risk high to low (unassessed counts as high); then input
/// order. Stable.
std::vector<Hypothesis> prioritize(std::vector<Hypothesis> hypotheses, const AssessmentIndex& current);

nlohmann::json hypotheses_to_json(const std::vector<Hypothesis>& hypotheses, const AssessmentIndex& current = {});
std::vector<Hypothesis> hypotheses_from_json(const nlohmann::json& doc);

/// | id | kind | statement | status | risk |
std::string hypotheses_to_markdown(const std::vector<Hypothesis>& hypotheses, const AssessmentIndex& current = {});

}  // namespace hymap
