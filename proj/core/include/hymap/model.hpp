// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hymap {

enum class NodeKind { Product, Customer, Feature, Concept };
enum class EdgeKind { Offering, Influence, Perception };
enum class Sign { Positive, Negative, Neutral };

/// Connective used when a perception edge becomes a problem hypothesis.
enum class ProblemVerb { Has, WouldLikeTo };

inline constexpr NodeKind kAllNodeKinds[] = {NodeKind::Product, NodeKind::Customer,
                                             NodeKind::Feature, NodeKind::Concept};
inline constexpr Sign kAllSigns[] = {Sign::Positive, Sign::Negative, Sign::Neutral};

std::string_view to_string(NodeKind kind) noexcept;
std::string_view to_string(EdgeKind kind) noexcept;
std::string_view to_string(ProblemVerb verb) noexcept;
std::optional<NodeKind> parse_node_kind(std::string_view text) noexcept;
std::optional<EdgeKind> parse_edge_kind(std::string_view text) noexcept;
std::optional<ProblemVerb> parse_problem_verb(std::string_view text) noexcept;

/// "+", "-" or "o".
std::string_view symbol(Sign sign) noexcept;
std::optional<Sign> parse_sign(std::string_view text) noexcept;

/// The edge kind implied by an ordered pair of endpoint kinds, or nullopt when
/// the notation does not allow an arrow between them.
///   Product  -> Feature           : Offering
///   Feature  -> Concept           : Influence
///   Concept  -> Concept           : Influence
///   Customer -> Concept           : Perception
std::optional<EdgeKind> edge_kind_for(NodeKind src, NodeKind dst) noexcept;

constexpr bool requires_sign(EdgeKind kind) noexcept { return kind == EdgeKind::Influence; }

/// Case-folded, whitespace-collapsed, trimmed form used for label uniqueness.
std::string normalize_label(std::string_view label);

/// Trims leading/trailing whitespace.
std::string trim(std::string_view text);

struct MapNode {
    std::string id;
    NodeKind kind = NodeKind::Concept;
    std::string label;
    std::string notes;

    friend bool operator==(const MapNode&, const MapNode&) = default;
};

struct MapEdge {
    std::string id;
    std::string src;
    std::string dst;
    EdgeKind kind = EdgeKind::Influence;
    std::optional<Sign> sign;
    bool saturated = false;
    std::string rationale;
    ProblemVerb verb = ProblemVerb::Has;

    friend bool operator==(const MapEdge&, const MapEdge&) = default;
};

/// A founder's cognitive map: one product, customers, features and concepts
/// joined by offering, influence and perception edges, kept acyclic.
///
/// The checked mutators (add_node, add_edge, remove_element, substitute_node)
/// are atomic: on failure they throw hymap::Error and leave the map untouched.
/// Nodes and edges are kept in creation order.
///
/// The map is a plain value. Share it across threads as a const snapshot and
/// mutate a copy.
class CognitiveMap {
public:
    using Clock = std::chrono::system_clock;

    explicit CognitiveMap(std::string title = {}, std::string id = "map");

    const std::string& id() const noexcept { return id_; }
    void set_id(std::string id) { id_ = std::move(id); }
    const std::string& title() const noexcept { return title_; }
    void set_title(std::string title);

    Clock::time_point created() const noexcept { return created_; }
    Clock::time_point modified() const noexcept { return modified_; }
    void set_timestamps(Clock::time_point created, Clock::time_point modified);

    const std::vector<MapNode>& nodes() const noexcept { return nodes_; }
    const std::vector<MapEdge>& edges() const noexcept { return edges_; }

    const MapNode* find_node(std::string_view id) const noexcept;
    const MapEdge* find_edge(std::string_view id) const noexcept;
    const MapNode* product() const noexcept;
    const MapNode* find_by_label(NodeKind kind, std::string_view label) const noexcept;
    const MapEdge* find_edge_between(std::string_view src, std::string_view dst) const noexcept;

    std::size_t count(NodeKind kind) const noexcept;
    std::size_t count(EdgeKind kind) const noexcept;

    /// Throws EmptyLabel, SecondProduct or DuplicateLabel.
    std::string add_node(NodeKind kind, std::string_view label, std::string notes = {});

    /// Kind is derived from the endpoint kinds. Throws UnknownId,
    /// IllegalEndpointPair, MissingSign, UnexpectedSign, DuplicateEdge, or
    /// WouldCreateCycle (subjects hold the cycle as a node path that starts and
    /// ends at `src`).
    std::string add_edge(std::string_view src, std::string_view dst,
                         std::optional<Sign> sign = std::nullopt,
                         ProblemVerb verb = ProblemVerb::Has);

    /// Removes a node (with its incident edges) or an edge.
    void remove_element(std::string_view id);

    void substitute_node(std::string_view id, std::string_view label);

    void set_node_notes(std::string_view id, std::string notes);
    void set_saturated(std::string_view edge_id, bool saturated);
    void set_rationale(std::string_view edge_id, std::string rationale);
    void set_problem_verb(std::string_view edge_id, ProblemVerb verb);

    /// Raw insertion for importers. No notation rule is checked; run
    /// validate() afterwards. Ids must be unique.
    void insert_node_unchecked(MapNode node);
    void insert_edge_unchecked(MapEdge edge);

    /// Shortest directed path from `from` to `to` as node ids (both ends
    /// included), or nullopt.
    std::optional<std::vector<std::string>> find_path(std::string_view from,
                                                      std::string_view to) const;

private:
    std::string next_id(std::string_view slug);
    void note_existing_id(const std::string& id);
    void touch();
    MapNode& node_ref(std::string_view id);
    MapEdge& edge_ref(std::string_view id);

    std::string id_;
    std::string title_;
    Clock::time_point created_;
    Clock::time_point modified_;
    std::vector<MapNode> nodes_;
    std::vector<MapEdge> edges_;
    std::map<std::string, std::size_t, std::less<>> counters_;
};

/// Equality up to ids: same node multiset by (kind, label) and same edge
/// multiset by (kind, src label, dst label, sign, verb).
bool structurally_equal(const CognitiveMap& a, const CognitiveMap& b);

}  // namespace hymap
