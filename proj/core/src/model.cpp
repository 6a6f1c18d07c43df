// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "hymap/model.hpp"

#include "hymap/error.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <tuple>
#include <unordered_map>

namespace hymap {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view slug(NodeKind kind) {
    switch (kind) {
    case NodeKind::Product: return "product";
    case NodeKind::Customer: return "customer";
    case NodeKind::Feature: return "feature";
    case NodeKind::Concept: return "concept";
    }
    return "node";
}

std::string_view slug(EdgeKind kind) {
    switch (kind) {
    case EdgeKind::Offering: return "offering";
    case EdgeKind::Influence: return "influence";
    case EdgeKind::Perception: return "perception";
    }
    return "edge";
}

std::string quoted(std::string_view s) { return "\"" + std::string(s) + "\""; }

}  // namespace

std::string_view to_string(NodeKind kind) noexcept { return slug(kind); }
std::string_view to_string(EdgeKind kind) noexcept { return slug(kind); }

std::string_view to_string(ProblemVerb verb) noexcept {
    return verb == ProblemVerb::Has ? "has" : "would like to";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) noexcept {
    for (auto kind : kAllNodeKinds) {
        if (slug(kind) == text) return kind;
    }
    return std::nullopt;
}

std::optional<EdgeKind> parse_edge_kind(std::string_view text) noexcept {
    for (auto kind : {EdgeKind::Offering, EdgeKind::Influence, EdgeKind::Perception}) {
        if (slug(kind) == text) return kind;
    }
    return std::nullopt;
}

std::optional<ProblemVerb> parse_problem_verb(std::string_view text) noexcept {
    if (text == "has") return ProblemVerb::Has;
    if (text == "would like to") return ProblemVerb::WouldLikeTo;
    return std::nullopt;
}

std::string_view symbol(Sign sign) noexcept {
    switch (sign) {
    case Sign::Positive: return "+";
    case Sign::Negative: return "-";
    case Sign::Neutral: return "o";
    }
    return "?";
}

std::optional<Sign> parse_sign(std::string_view text) noexcept {
    if (text == "+") return Sign::Positive;
    if (text == "-") return Sign::Negative;
    if (text == "o" || text == "/o/") return Sign::Neutral;
    return std::nullopt;
}

std::optional<EdgeKind> edge_kind_for(NodeKind src, NodeKind dst) noexcept {
    if (src == NodeKind::Product && dst == NodeKind::Feature) return EdgeKind::Offering;
    if (src == NodeKind::Customer && dst == NodeKind::Concept) return EdgeKind::Perception;
    if ((src == NodeKind::Feature || src == NodeKind::Concept) && dst == NodeKind::Concept)
        return EdgeKind::Influence;
    return std::nullopt;
}

std::string trim(std::string_view text) {
    auto begin = std::find_if_not(text.begin(), text.end(), is_space);
    auto end = std::find_if_not(text.rbegin(), text.rend(), is_space).base();
    return begin < end ? std::string(begin, end) : std::string();
}

std::string normalize_label(std::string_view label) {
    std::string out;
    out.reserve(label.size());
    bool pending_space = false;
    for (char c : label) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        auto uc = static_cast<unsigned char>(c);
        out.push_back(uc < 0x80 ? static_cast<char>(std::tolower(uc)) : c);
    }
    return out;
}

CognitiveMap::CognitiveMap(std::string title, std::string id)
    : id_(std::move(id)), title_(std::move(title)), created_(Clock::now()), modified_(created_) {}

void CognitiveMap::set_title(std::string title) {
    title_ = std::move(title);
    touch();
}

void CognitiveMap::set_timestamps(Clock::time_point created, Clock::time_point modified) {
    created_ = created;
    modified_ = modified;
}

void CognitiveMap::touch() { modified_ = Clock::now(); }

const MapNode* CognitiveMap::find_node(std::string_view id) const noexcept {
    auto it = std::find_if(nodes_.begin(), nodes_.end(), [&](const MapNode& n) { return n.id == id; });
    return it == nodes_.end() ? nullptr : &*it;
}

const MapEdge* CognitiveMap::find_edge(std::string_view id) const noexcept {
    auto it = std::find_if(edges_.begin(), edges_.end(), [&](const MapEdge& e) { return e.id == id; });
    return it == edges_.end() ? nullptr : &*it;
}

const MapNode* CognitiveMap::product() const noexcept {
    auto it = std::find_if(nodes_.begin(), nodes_.end(),
                           [](const MapNode& n) { return n.kind == NodeKind::Product; });
    return it == nodes_.end() ? nullptr : &*it;
}

const MapNode* CognitiveMap::find_by_label(NodeKind kind, std::string_view label) const noexcept {
    const auto key = normalize_label(label);
    auto it = std::find_if(nodes_.begin(), nodes_.end(), [&](const MapNode& n) {
        return n.kind == kind && normalize_label(n.label) == key;
    });
    return it == nodes_.end() ? nullptr : &*it;
}

const MapEdge* CognitiveMap::find_edge_between(std::string_view src, std::string_view dst) const noexcept {
    auto it = std::find_if(edges_.begin(), edges_.end(),
                           [&](const MapEdge& e) { return e.src == src && e.dst == dst; });
    return it == edges_.end() ? nullptr : &*it;
}

std::size_t CognitiveMap::count(NodeKind kind) const noexcept {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [&](const MapNode& n) { return n.kind == kind; }));
}

std::size_t CognitiveMap::count(EdgeKind kind) const noexcept {
    return static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [&](const MapEdge& e) { return e.kind == kind; }));
}

MapNode& CognitiveMap::node_ref(std::string_view id) {
    auto it = std::find_if(nodes_.begin(), nodes_.end(), [&](const MapNode& n) { return n.id == id; });
    if (it == nodes_.end())
        throw Error(ErrorCode::UnknownId, "no node with id " + quoted(id), {std::string(id)});
    return *it;
}

MapEdge& CognitiveMap::edge_ref(std::string_view id) {
    auto it = std::find_if(edges_.begin(), edges_.end(), [&](const MapEdge& e) { return e.id == id; });
    if (it == edges_.end())
        throw Error(ErrorCode::UnknownId, "no edge with id " + quoted(id), {std::string(id)});
    return *it;
}

std::string CognitiveMap::next_id(std::string_view prefix) {
    auto it = counters_.find(prefix);
    if (it == counters_.end()) it = counters_.emplace(std::string(prefix), 0).first;
    return std::string(prefix) + "-" + std::to_string(++it->second);
}

void CognitiveMap::note_existing_id(const std::string& id) {
    auto dash = id.rfind('-');
    if (dash == std::string::npos || dash + 1 == id.size()) return;
    const auto suffix = std::string_view(id).substr(dash + 1);
    if (!std::all_of(suffix.begin(), suffix.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return;
    if (suffix.size() > 9) return;
    const auto value = static_cast<std::size_t>(std::stoul(std::string(suffix)));
    auto& counter = counters_[id.substr(0, dash)];
    counter = std::max(counter, value);
}

std::string CognitiveMap::add_node(NodeKind kind, std::string_view label, std::string notes) {
    auto text = trim(label);
    if (text.empty())
        throw Error(ErrorCode::EmptyLabel, std::string(to_string(kind)) + " label must not be empty");
    if (kind == NodeKind::Product && product() != nullptr)
        throw Error(ErrorCode::SecondProduct, "map already has a product node " + quoted(product()->label),
                    {product()->id});
    if (const auto* existing = find_by_label(kind, text))
        throw Error(ErrorCode::DuplicateLabel,
                    std::string(to_string(kind)) + " " + quoted(text) + " already exists", {existing->id});

    MapNode node{next_id(slug(kind)), kind, std::string(label), std::move(notes)};
    // Display text is kept verbatim apart from surrounding whitespace.
    node.label = std::move(text);
    nodes_.push_back(std::move(node));
    touch();
    return nodes_.back().id;
}

std::string CognitiveMap::add_edge(std::string_view src, std::string_view dst, std::optional<Sign> sign,
                                   ProblemVerb verb) {
    const auto* from = find_node(src);
    if (from == nullptr) throw Error(ErrorCode::UnknownId, "no node with id " + quoted(src), {std::string(src)});
    const auto* to = find_node(dst);
    if (to == nullptr) throw Error(ErrorCode::UnknownId, "no node with id " + quoted(dst), {std::string(dst)});

    const auto kind = edge_kind_for(from->kind, to->kind);
    if (!kind || src == dst) {
        throw Error(ErrorCode::IllegalEndpointPair,
                    "no relationship may go from a " + std::string(to_string(from->kind)) + " to a " +
                        std::string(to_string(to->kind)),
                    {std::string(src), std::string(dst)});
    }
    if (requires_sign(*kind) && !sign)
        throw Error(ErrorCode::MissingSign, "influence edges need a sign (+, - or o)",
                    {std::string(src), std::string(dst)});
    if (!requires_sign(*kind) && sign)
        throw Error(ErrorCode::UnexpectedSign,
                    std::string(to_string(*kind)) + " edges carry no sign", {std::string(src), std::string(dst)});

    for (const auto& e : edges_) {
        if (e.src == src && e.dst == dst && e.kind == *kind)
            throw Error(ErrorCode::DuplicateEdge, "edge " + quoted(from->label) + " -> " + quoted(to->label) +
                                                      " already exists",
                        {e.id});
    }
    if (auto back = find_path(dst, src)) {
        std::vector<std::string> cycle{std::string(src)};
        cycle.insert(cycle.end(), back->begin(), back->end());
        throw Error(ErrorCode::WouldCreateCycle,
                    "edge " + quoted(from->label) + " -> " + quoted(to->label) + " would close a cycle",
                    std::move(cycle));
    }

    MapEdge edge;
    edge.id = next_id(slug(*kind));
    edge.src = std::string(src);
    edge.dst = std::string(dst);
    edge.kind = *kind;
    edge.sign = sign;
    edge.verb = *kind == EdgeKind::Perception ? verb : ProblemVerb::Has;
    edges_.push_back(std::move(edge));
    touch();
    return edges_.back().id;
}

void CognitiveMap::remove_element(std::string_view id) {
    if (const auto* node = find_node(id)) {
        if (node->kind == NodeKind::Product)
            throw Error(ErrorCode::ProductRemoval, "the product node can only go away with the map",
                        {std::string(id)});
        std::erase_if(edges_, [&](const MapEdge& e) { return e.src == id || e.dst == id; });
        std::erase_if(nodes_, [&](const MapNode& n) { return n.id == id; });
        touch();
        return;
    }
    if (find_edge(id) != nullptr) {
        std::erase_if(edges_, [&](const MapEdge& e) { return e.id == id; });
        touch();
        return;
    }
    throw Error(ErrorCode::UnknownId, "no node or edge with id " + quoted(id), {std::string(id)});
}

void CognitiveMap::substitute_node(std::string_view id, std::string_view label) {
    auto& node = node_ref(id);
    auto text = trim(label);
    if (text.empty()) throw Error(ErrorCode::EmptyLabel, "label must not be empty", {std::string(id)});
    if (const auto* other = find_by_label(node.kind, text); other != nullptr && other->id != id)
        throw Error(ErrorCode::DuplicateLabel,
                    std::string(to_string(node.kind)) + " " + quoted(text) + " already exists", {other->id});
    node.label = std::move(text);
    touch();
}

void CognitiveMap::set_node_notes(std::string_view id, std::string notes) {
    node_ref(id).notes = std::move(notes);
    touch();
}

void CognitiveMap::set_saturated(std::string_view edge_id, bool saturated) {
    edge_ref(edge_id).saturated = saturated;
    touch();
}

void CognitiveMap::set_rationale(std::string_view edge_id, std::string rationale) {
    edge_ref(edge_id).rationale = std::move(rationale);
    touch();
}

void CognitiveMap::set_problem_verb(std::string_view edge_id, ProblemVerb verb) {
    auto& edge = edge_ref(edge_id);
    if (edge.kind != EdgeKind::Perception && verb != ProblemVerb::Has)
        throw Error(ErrorCode::UnexpectedSign, "only perception edges take a problem connective",
                    {std::string(edge_id)});
    edge.verb = verb;
    touch();
}

void CognitiveMap::insert_node_unchecked(MapNode node) {
    note_existing_id(node.id);
    nodes_.push_back(std::move(node));
}

void CognitiveMap::insert_edge_unchecked(MapEdge edge) {
    note_existing_id(edge.id);
    edges_.push_back(std::move(edge));
}

std::optional<std::vector<std::string>> CognitiveMap::find_path(std::string_view from,
                                                                std::string_view to) const {
    std::unordered_map<std::string, std::string> parent;
    std::deque<std::string> queue{std::string(from)};
    parent.emplace(std::string(from), std::string());
    while (!queue.empty()) {
        auto current = std::move(queue.front());
        queue.pop_front();
        if (current == to) {
            std::vector<std::string> path;
            for (auto at = current; !at.empty(); at = parent.at(at)) path.push_back(at);
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (const auto& e : edges_) {
            if (e.src == current && parent.emplace(e.dst, current).second) queue.push_back(e.dst);
        }
    }
    return std::nullopt;
}

namespace {

using NodeKey = std::tuple<NodeKind, std::string>;
using EdgeKey = std::tuple<EdgeKind, NodeKind, std::string, NodeKind, std::string, int, ProblemVerb>;

std::vector<NodeKey> node_keys(const CognitiveMap& m) {
    std::vector<NodeKey> keys;
    for (const auto& n : m.nodes()) keys.emplace_back(n.kind, n.label);
    std::sort(keys.begin(), keys.end());
    return keys;
}

std::vector<EdgeKey> edge_keys(const CognitiveMap& m) {
    std::vector<EdgeKey> keys;
    for (const auto& e : m.edges()) {
        const auto* s = m.find_node(e.src);
        const auto* d = m.find_node(e.dst);
        keys.emplace_back(e.kind, s ? s->kind : NodeKind::Concept, s ? s->label : e.src,
                          d ? d->kind : NodeKind::Concept, d ? d->label : e.dst,
                          e.sign ? static_cast<int>(*e.sign) : -1, e.verb);
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

}  // namespace

bool structurally_equal(const CognitiveMap& a, const CognitiveMap& b) {
    return node_keys(a) == node_keys(b) && edge_keys(a) == edge_keys(b);
}

}  // namespace hymap
