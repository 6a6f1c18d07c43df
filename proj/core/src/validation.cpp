// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "hymap/validation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace hymap {

namespace {

std::string q(std::string_view s) { return "\"" + std::string(s) + "\""; }

using Adjacency = std::unordered_map<std::string, std::vector<std::string>>;

Adjacency successors(const CognitiveMap& map) {
    Adjacency out;
    for (const auto& e : map.edges()) out[e.src].push_back(e.dst);
    return out;
}

Adjacency predecessors(const CognitiveMap& map) {
    Adjacency in;
    for (const auto& e : map.edges()) in[e.dst].push_back(e.src);
    return in;
}

std::set<std::string> reach(const Adjacency& adj, const std::string& start) {
    std::set<std::string> seen{start};
    std::deque<std::string> queue{start};
    while (!queue.empty()) {
        auto at = queue.front();
        queue.pop_front();
        auto it = adj.find(at);
        if (it == adj.end()) continue;
        for (const auto& next : it->second) {
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    return seen;
}

const std::string& label_of(const CognitiveMap& map, const std::string& id) {
    const auto* n = map.find_node(id);
    return n ? n->label : id;
}

}  // namespace

std::string_view to_string(Severity severity) noexcept {
    return severity == Severity::Error ? "error" : "warning";
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) noexcept {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::vector<std::vector<std::string>> find_cycles(const CognitiveMap& map) {
    const auto out = successors(map);
    const auto in = predecessors(map);

    std::vector<std::string> ids;
    for (const auto& n : map.nodes()) ids.push_back(n.id);
    std::sort(ids.begin(), ids.end());

    std::vector<std::vector<std::string>> cycles;
    std::unordered_set<std::string> done;
    for (const auto& start : ids) {
        if (done.count(start)) continue;
        const auto forward = reach(out, start);
        const auto backward = reach(in, start);
        std::set<std::string> component;
        std::set_intersection(forward.begin(), forward.end(), backward.begin(), backward.end(),
                              std::inserter(component, component.end()));
        for (const auto& id : component) done.insert(id);
        if (component.size() < 2) continue;

        // Shortest closed walk from `start` back to itself inside the component.
        std::unordered_map<std::string, std::string> parent;
        std::deque<std::string> queue;
        std::string last;
        auto it = out.find(start);
        std::vector<std::string> first_hops = it == out.end() ? std::vector<std::string>{} : it->second;
        std::sort(first_hops.begin(), first_hops.end());
        for (const auto& next : first_hops) {
            if (!component.count(next) || next == start || parent.count(next)) continue;
            parent[next] = start;
            queue.push_back(next);
        }
        while (!queue.empty() && last.empty()) {
            auto at = queue.front();
            queue.pop_front();
            auto adj = out.find(at);
            if (adj == out.end()) continue;
            auto hops = adj->second;
            std::sort(hops.begin(), hops.end());
            for (const auto& next : hops) {
                if (next == start) {
                    last = at;
                    break;
                }
                if (!component.count(next) || parent.count(next)) continue;
                parent[next] = at;
                queue.push_back(next);
            }
        }
        std::vector<std::string> path{start};
        for (auto at = last; !at.empty() && at != start; at = parent.at(at)) path.push_back(at);
        std::reverse(path.begin() + 1, path.end());
        path.push_back(start);
        cycles.push_back(std::move(path));
    }
    return cycles;
}

std::vector<std::string> orphan_features(const CognitiveMap& map) {
    std::vector<std::string> out;
    for (const auto& n : map.nodes()) {
        if (n.kind != NodeKind::Feature) continue;
        bool offered = false;
        bool influences = false;
        for (const auto& e : map.edges()) {
            offered = offered || (e.dst == n.id && e.kind == EdgeKind::Offering);
            influences = influences || (e.src == n.id && e.kind == EdgeKind::Influence);
        }
        if (!offered || !influences) out.push_back(n.id);
    }
    return out;
}

std::vector<std::string> unreachable_concepts(const CognitiveMap& map) {
    Adjacency influence;
    std::unordered_set<std::string> perceived;
    for (const auto& e : map.edges()) {
        if (e.kind == EdgeKind::Influence) influence[e.src].push_back(e.dst);
        if (e.kind == EdgeKind::Perception) perceived.insert(e.dst);
    }
    std::unordered_set<std::string> reached;
    for (const auto& n : map.nodes()) {
        if (n.kind != NodeKind::Feature) continue;
        for (const auto& id : reach(influence, n.id)) reached.insert(id);
    }
    std::vector<std::string> out;
    for (const auto& n : map.nodes()) {
        if (n.kind == NodeKind::Concept && !reached.count(n.id) && !perceived.count(n.id)) out.push_back(n.id);
    }
    return out;
}

std::vector<std::string> customers_without_problems(const CognitiveMap& map) {
    std::vector<std::string> out;
    for (const auto& n : map.nodes()) {
        if (n.kind != NodeKind::Customer) continue;
        const bool perceives = std::any_of(map.edges().begin(), map.edges().end(), [&](const MapEdge& e) {
            return e.src == n.id && e.kind == EdgeKind::Perception;
        });
        if (!perceives) out.push_back(n.id);
    }
    return out;
}

std::vector<Diagnostic> validate(const CognitiveMap& map) {
    std::vector<Diagnostic> out;
    auto error = [&](std::string code, std::vector<std::string> subjects, std::string message) {
        out.push_back({Severity::Error, std::move(code), std::move(subjects), std::move(message)});
    };
    auto warning = [&](std::string code, std::vector<std::string> subjects, std::string message) {
        out.push_back({Severity::Warning, std::move(code), std::move(subjects), std::move(message)});
    };

    std::vector<std::string> products;
    std::map<std::string, int> id_uses;
    std::map<std::pair<NodeKind, std::string>, std::vector<std::string>> by_label;
    for (const auto& n : map.nodes()) {
        ++id_uses[n.id];
        if (n.kind == NodeKind::Product) products.push_back(n.id);
        const auto key = normalize_label(n.label);
        if (key.empty()) error("EmptyLabel", {n.id}, "node has an empty label");
        else by_label[{n.kind, key}].push_back(n.id);
    }
    if (products.empty()) error("NoProduct", {}, "map has no product node");
    if (products.size() > 1) error("MultipleProducts", products, "map has more than one product node");
    for (const auto& [key, ids] : by_label) {
        if (ids.size() > 1)
            error("DuplicateLabel", ids, std::string(to_string(key.first)) + " label " + q(key.second) +
                                             " is used more than once");
    }

    std::map<std::tuple<std::string, std::string, EdgeKind>, std::vector<std::string>> edge_keys;
    for (const auto& e : map.edges()) {
        ++id_uses[e.id];
        const auto* s = map.find_node(e.src);
        const auto* d = map.find_node(e.dst);
        if (s == nullptr || d == nullptr) {
            error("DanglingEdge", {e.id}, "edge endpoint " + q(s == nullptr ? e.src : e.dst) + " does not exist");
            continue;
        }
        if (e.src == e.dst) {
            error("SelfLoop", {e.id}, "edge starts and ends at " + q(s->label));
            continue;
        }
        const auto implied = edge_kind_for(s->kind, d->kind);
        if (!implied) {
            error("IllegalEndpointPair", {e.id},
                  "no relationship may go from a " + std::string(to_string(s->kind)) + " to a " +
                      std::string(to_string(d->kind)));
            continue;
        }
        if (*implied != e.kind) {
            error("EdgeKindMismatch", {e.id},
                  "edge is marked " + std::string(to_string(e.kind)) + " but its endpoints imply " +
                      std::string(to_string(*implied)));
        }
        if (requires_sign(*implied) && !e.sign) error("MissingSign", {e.id}, "influence edge has no sign");
        if (!requires_sign(*implied) && e.sign)
            error("UnexpectedSign", {e.id}, std::string(to_string(*implied)) + " edge carries a sign");
        edge_keys[{e.src, e.dst, *implied}].push_back(e.id);
    }
    for (const auto& [key, ids] : edge_keys) {
        if (ids.size() > 1)
            error("DuplicateEdge", ids,
                  "edge " + q(label_of(map, std::get<0>(key))) + " -> " + q(label_of(map, std::get<1>(key))) +
                      " appears more than once");
    }
    for (const auto& [id, uses] : id_uses) {
        if (uses > 1) error("DuplicateId", {id}, "id " + q(id) + " is used more than once");
    }
    for (auto& cycle : find_cycles(map)) {
        std::string text;
        for (const auto& id : cycle) text += (text.empty() ? "" : " -> ") + q(label_of(map, id));
        error("Cycle", std::move(cycle), "cycle " + text);
    }

    for (const auto& id : orphan_features(map)) {
        warning("OrphanFeature", {id}, "feature " + q(label_of(map, id)) +
                                           " is not both offered by the product and influencing a concept");
    }
    for (const auto& id : unreachable_concepts(map)) {
        warning("UnreachableConcept", {id}, "concept " + q(label_of(map, id)) +
                                                " is neither reached from a feature nor perceived by a customer");
    }
    for (const auto& id : customers_without_problems(map)) {
        warning("CustomerWithoutProblems", {id}, "customer " + q(label_of(map, id)) + " perceives no problem");
    }

    std::stable_sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::tie(a.severity, a.code, a.subjects) < std::tie(b.severity, b.code, b.subjects);
    });
    return out;
}

nlohmann::json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& d : diagnostics) {
        out.push_back({{"severity", to_string(d.severity)},
                       {"code", d.code},
                       {"subjects", d.subjects},
                       {"message", d.message}});
    }
    return out;
}

}  // namespace hymap
