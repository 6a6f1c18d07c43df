// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#pragma once

#include "hymap/model.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hymap {

/// Layered placement following the map template: product on layer 0,
/// features on 1, problem concepts on 2..k (longest influence path), and a
/// single customer band on k+1.
struct LayerAssignment {
    static constexpr int kProductLayer = 0;
    static constexpr int kFeatureLayer = 1;
    static constexpr int kFirstProblemLayer = 2;

    std::map<std::string, int> layer_of;
    /// Deepest problem layer holding a concept; nullopt when there are none.
    std::optional<int> deepest_problem_layer;
    /// Band shared by every customer; nullopt when the map has no customers.
    std::optional<int> customer_band;

    int layer(const std::string& id) const { return layer_of.at(id); }
    /// Number of rendered bands: every index from 0 to the last occupied one.
    int band_count() const noexcept;
};

/// Throws Error(InvalidMap) when validate() reports errors.
LayerAssignment assign_layers(const CognitiveMap& map);

enum class HypothesisKind { Problem, Value, Product };

std::string_view to_string(HypothesisKind kind) noexcept;
std::optional<HypothesisKind> parse_hypothesis_kind(std::string_view text) noexcept;

/// Offering -> Product, Influence -> Value, Perception -> Problem.
HypothesisKind categorize(const MapEdge& edge) noexcept;
/// Throws UnknownId when the edge is not in the map.
HypothesisKind categorize(const CognitiveMap& map, std::string_view edge_id);

struct StructureReport {
    std::size_t products = 0;
    std::size_t customers = 0;
    std::size_t features = 0;
    std::size_t concepts = 0;
    std::size_t offering_edges = 0;
    std::size_t influence_edges = 0;
    std::size_t perception_edges = 0;
    /// Nodes per layer index; empty when layers cannot be assigned.
    std::map<int, std::size_t> nodes_per_layer;
    std::vector<std::string> orphan_features;
    std::vector<std::string> unreachable_concepts;
    std::vector<std::string> customers_without_problems;
    /// Unsaturated influence and perception edges still open to how?/why?.
    std::vector<std::string> deepening_candidates;
};

StructureReport structure_report(const CognitiveMap& map);

nlohmann::json report_to_json(const StructureReport& report);
std::string report_to_text(const StructureReport& report, const CognitiveMap& map);

/// Edges that the deepening step can still refine (influence or perception).
bool is_deepenable(const MapEdge& edge) noexcept;

}  // namespace hymap
