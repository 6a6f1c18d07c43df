// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "hymap/analysis.hpp"

#include "hymap/error.hpp"
#include "hymap/validation.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace hymap {

int LayerAssignment::band_count() const noexcept {
    if (customer_band) return *customer_band + 1;
    if (deepest_problem_layer) return *deepest_problem_layer + 1;
    for (const auto& [id, layer] : layer_of) {
        if (layer == kFeatureLayer) return 2;
    }
    return 1;
}

LayerAssignment assign_layers(const CognitiveMap& map) {
    const auto diagnostics = validate(map);
    if (has_errors(diagnostics)) {
        std::vector<std::string> codes;
        for (const auto& d : diagnostics)
            if (d.severity == Severity::Error) codes.push_back(d.code);
        throw Error(ErrorCode::InvalidMap, "cannot assign layers to a map with validation errors", codes);
    }

    std::unordered_map<std::string, std::vector<std::string>> influencers;
    for (const auto& e : map.edges()) {
        if (e.kind == EdgeKind::Influence) influencers[e.dst].push_back(e.src);
    }

    LayerAssignment out;
    std::unordered_map<std::string, int> memo;
    std::function<int(const std::string&)> layer_of = [&](const std::string& id) -> int {
        if (auto it = memo.find(id); it != memo.end()) return it->second;
        const auto* node = map.find_node(id);
        int layer = LayerAssignment::kFirstProblemLayer;
        if (node->kind == NodeKind::Product) layer = LayerAssignment::kProductLayer;
        else if (node->kind == NodeKind::Feature) layer = LayerAssignment::kFeatureLayer;
        else if (auto it = influencers.find(id); it != influencers.end()) {
            for (const auto& pred : it->second) layer = std::max(layer, layer_of(pred) + 1);
        }
        memo.emplace(id, layer);
        return layer;
    };

    bool has_customers = false;
    for (const auto& n : map.nodes()) {
        if (n.kind == NodeKind::Customer) {
            has_customers = true;
            continue;
        }
        const int layer = layer_of(n.id);
        out.layer_of[n.id] = layer;
        if (n.kind == NodeKind::Concept)
            out.deepest_problem_layer = std::max(out.deepest_problem_layer.value_or(layer), layer);
    }
    if (has_customers) {
        out.customer_band = out.deepest_problem_layer.value_or(LayerAssignment::kFirstProblemLayer - 1) + 1;
        for (const auto& n : map.nodes()) {
            if (n.kind == NodeKind::Customer) out.layer_of[n.id] = *out.customer_band;
        }
    }
    return out;
}

std::string_view to_string(HypothesisKind kind) noexcept {
    switch (kind) {
    case HypothesisKind::Problem: return "problem";
    case HypothesisKind::Value: return "value";
    case HypothesisKind::Product: return "product";
    }
    return "unknown";
}

std::optional<HypothesisKind> parse_hypothesis_kind(std::string_view text) noexcept {
    for (auto kind : {HypothesisKind::Problem, HypothesisKind::Value, HypothesisKind::Product}) {
        if (to_string(kind) == text) return kind;
    }
    return std::nullopt;
}

HypothesisKind categorize(const MapEdge& edge) noexcept {
    switch (edge.kind) {
    case EdgeKind::Offering: return HypothesisKind::Product;
    case EdgeKind::Influence: return HypothesisKind::Value;
    case EdgeKind::Perception: return HypothesisKind::Problem;
    }
    return HypothesisKind::Value;
}

HypothesisKind categorize(const CognitiveMap& map, std::string_view edge_id) {
    const auto* edge = map.find_edge(edge_id);
    if (edge == nullptr)
        throw Error(ErrorCode::UnknownId, "no edge with id \"" + std::string(edge_id) + "\"",
                    {std::string(edge_id)});
    return categorize(*edge);
}

bool is_deepenable(const MapEdge& edge) noexcept {
    return edge.kind == EdgeKind::Influence || edge.kind == EdgeKind::Perception;
}

StructureReport structure_report(const CognitiveMap& map) {
    StructureReport r;
    r.products = map.count(NodeKind::Product);
    r.customers = map.count(NodeKind::Customer);
    r.features = map.count(NodeKind::Feature);
    r.concepts = map.count(NodeKind::Concept);
    r.offering_edges = map.count(EdgeKind::Offering);
    r.influence_edges = map.count(EdgeKind::Influence);
    r.perception_edges = map.count(EdgeKind::Perception);
    if (!has_errors(validate(map))) {
        for (const auto& [id, layer] : assign_layers(map).layer_of) ++r.nodes_per_layer[layer];
    }
    r.orphan_features = orphan_features(map);
    r.unreachable_concepts = unreachable_concepts(map);
    r.customers_without_problems = customers_without_problems(map);
    for (const auto& e : map.edges()) {
        if (is_deepenable(e) && !e.saturated) r.deepening_candidates.push_back(e.id);
    }
    return r;
}

nlohmann::json report_to_json(const StructureReport& r) {
    nlohmann::json layers = nlohmann::json::object();
    for (const auto& [layer, count] : r.nodes_per_layer) layers[std::to_string(layer)] = count;
    return {{"counts",
             {{"products", r.products},
              {"customers", r.customers},
              {"features", r.features},
              {"concepts", r.concepts},
              {"offering_edges", r.offering_edges},
              {"influence_edges", r.influence_edges},
              {"perception_edges", r.perception_edges}}},
            {"nodes_per_layer", layers},
            {"orphan_features", r.orphan_features},
            {"unreachable_concepts", r.unreachable_concepts},
            {"customers_without_problems", r.customers_without_problems},
            {"deepening_candidates", r.deepening_candidates}};
}

std::string report_to_text(const StructureReport& r, const CognitiveMap& map) {
    std::ostringstream out;
    out << "nodes: " << r.products << " product, " << r.customers << " customers, " << r.features
        << " features, " << r.concepts << " concepts\n";
    out << "edges: " << r.offering_edges << " offering, " << r.influence_edges << " influence, "
        << r.perception_edges << " perception\n";
    if (!r.nodes_per_layer.empty()) {
        out << "layers:";
        for (const auto& [layer, count] : r.nodes_per_layer) out << " " << layer << ":" << count;
        out << "\n";
    }
    auto list = [&](const char* title, const std::vector<std::string>& ids) {
        if (ids.empty()) return;
        out << title << ":\n";
        for (const auto& id : ids) {
            out << "  " << id;
            if (const auto* n = map.find_node(id)) out << "  \"" << n->label << "\"";
            if (const auto* e = map.find_edge(id)) {
                const auto* s = map.find_node(e->src);
                const auto* d = map.find_node(e->dst);
                if (s && d) out << "  \"" << s->label << "\" -> \"" << d->label << "\"";
            }
            out << "\n";
        }
    };
    list("orphan features", r.orphan_features);
    list("unreachable concepts", r.unreachable_concepts);
    list("customers without problems", r.customers_without_problems);
    list("deepening candidates", r.deepening_candidates);
    return out.str();
}

}  // namespace hymap
