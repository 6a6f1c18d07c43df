// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#pragma once

#include "hymap/model.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace hymap {

inline constexpr int kMapSchemaVersion = 1;

/// Schema v1:
///   { "version": 1, "id", "title", "created", "modified",
///     "nodes": [ { "id", "kind", "label", "notes" } ],
///     "edges": [ { "id", "src", "dst", "kind", "sign", "saturated",
///                  "rationale", "verb" } ] }
/// `sign` is "+", "-", "o" or null; `verb` is "has" or "would like to".
nlohmann::json map_to_json(const CognitiveMap& map);
nlohmann::json node_to_json(const MapNode& node);
nlohmann::json edge_to_json(const MapEdge& edge);

/// Throws SchemaViolation (location = JSON pointer), UnsupportedVersion,
/// DanglingReference, or InvalidMap when the document breaks a map rule.
CognitiveMap map_from_json(const nlohmann::json& doc);

std::string export_json(const CognitiveMap& map, int indent = 2);
CognitiveMap import_json(std::string_view text);

/// ISO-8601 UTC with second precision, e.g. 2026-10-19T08:00:00Z.
std::string format_timestamp(std::chrono::system_clock::time_point tp);
std::optional<std::chrono::system_clock::time_point> parse_timestamp(std::string_view text);

}  // namespace hymap
