// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "properties.hpp"

#include "test_support.hpp"

#include "hymap/analysis.hpp"
#include "hymap/dsl.hpp"
#include "hymap/error.hpp"
#include "hymap/hypotheses.hpp"
#include "hymap/json_io.hpp"
#include "hymap/registry.hpp"
#include "hymap/validation.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <sstream>

namespace hymap::testing {

namespace {

// Legal endpoint pairs, written out independently of edge_kind_for.
std::optional<EdgeKind> expected_kind(NodeKind src, NodeKind dst) {
    if (src == NodeKind::Product && dst == NodeKind::Feature) return EdgeKind::Offering;
    if (src == NodeKind::Customer && dst == NodeKind::Concept) return EdgeKind::Perception;
    if ((src == NodeKind::Feature || src == NodeKind::Concept) && dst == NodeKind::Concept) return EdgeKind::Influence;
    return std::nullopt;
}

class Checker {
public:
    explicit Checker(PropertyReport& report) : report_(report) {}

    void check(bool ok, const std::string& property, const std::string& detail = {}) {
        ++report_.checks[property];
        if (ok) return;
        ++report_.failure_count;
        if (report_.failures.size() < 20) report_.failures.push_back(property + ": " + detail);
    }

private:
    PropertyReport& report_;
};

std::string snapshot(const CognitiveMap& map) { return map_to_json(map).dump(); }

void check_map(const CognitiveMap& map, std::mt19937_64& rng, Checker& c, PropertyReport& report) {
    const auto tag = "seed map with " + std::to_string(map.nodes().size()) + " nodes";

    // Construction and validation agree.
    c.check(!has_errors(validate(map)), "construction-validation agreement", tag);

    // One hypothesis per edge, kinds follow edge kinds.
    const auto hyps = generate(map);
    std::multiset<std::string> edge_ids;
    std::multiset<std::string> hyp_edges;
    for (const auto& e : map.edges()) edge_ids.insert(e.id);
    bool kinds_ok = true;
    std::set<std::string> hyp_ids;
    for (const auto& h : hyps) {
        hyp_edges.insert(h.edge_id);
        hyp_ids.insert(h.id);
        const auto* e = map.find_edge(h.edge_id);
        if (e == nullptr) {
            kinds_ok = false;
            continue;
        }
        const auto expected = e->kind == EdgeKind::Offering    ? HypothesisKind::Product
                              : e->kind == EdgeKind::Influence ? HypothesisKind::Value
                                                               : HypothesisKind::Problem;
        kinds_ok = kinds_ok && h.kind == expected && !h.generated_text.empty();
    }
    c.check(hyps.size() == map.edges().size() && edge_ids == hyp_edges && hyp_ids.size() == hyps.size(),
            "edge-hypothesis bijection", tag);
    c.check(kinds_ok, "hypothesis kind matches edge kind", tag);
    c.check(generate(map) == hyps, "generation determinism", tag);

    // Text round trip.
    const auto text = dsl::serialize(map);
    const auto parsed = dsl::parse(text);
    c.check(parsed.ok() && parsed.errors.empty(), "parse of serialized map succeeds", tag);
    if (parsed.ok()) {
        c.check(structurally_equal(*parsed.map, map), "parse(serialize(m)) equals m", tag);
        c.check(dsl::serialize(*parsed.map) == text, "serialization is canonical", tag);
    }
    const auto shuffled = shuffled_copy(map, rng);
    c.check(dsl::serialize(shuffled) == text, "serialization ignores ids and insertion order", tag);

    // JSON round trip keeps ids.
    const auto json_text = export_json(map);
    const auto imported = import_json(json_text);
    c.check(export_json(imported) == json_text && structurally_equal(imported, map), "json round trip", tag);

    // Layers.
    const auto layers = assign_layers(map);
    bool monotone = true;
    bool bands_ok = true;
    bool categorize_ok = true;
    for (const auto& n : map.nodes()) {
        const int l = layers.layer(n.id);
        switch (n.kind) {
        case NodeKind::Product: bands_ok = bands_ok && l == 0; break;
        case NodeKind::Feature: bands_ok = bands_ok && l == 1; break;
        case NodeKind::Concept: bands_ok = bands_ok && l >= 2; break;
        case NodeKind::Customer: bands_ok = bands_ok && layers.customer_band && l == *layers.customer_band; break;
        }
    }
    for (const auto& e : map.edges()) {
        const int ls = layers.layer(e.src);
        const int ld = layers.layer(e.dst);
        const bool customer_src = layers.customer_band && ls == *layers.customer_band &&
                                  map.find_node(e.src)->kind == NodeKind::Customer;
        if (e.kind != EdgeKind::Perception) monotone = monotone && ls < ld;
        // The layer formulation of the three hypothesis kinds.
        const bool product = ls == 0 && ld == 1;
        const bool value = !customer_src && ls >= 1 && ld >= 2;
        const bool problem = customer_src;
        const auto kind = categorize(e);
        categorize_ok = categorize_ok && (product == (kind == HypothesisKind::Product)) &&
                        (value == (kind == HypothesisKind::Value)) &&
                        (problem == (kind == HypothesisKind::Problem)) && (product + value + problem == 1);
    }
    c.check(monotone, "layer monotonicity", tag);
    c.check(bands_ok, "band placement by kind", tag);
    c.check(categorize_ok, "categorize agrees with layers", tag);
    c.check(assign_layers(shuffled).layer_of.size() == layers.layer_of.size(), "layering of shuffled copy", tag);

    // Illegal endpoint pairs are rejected and leave the map untouched.
    auto mutable_map = map;
    const auto before = snapshot(mutable_map);
    for (int attempt = 0; attempt < 8 && map.nodes().size() > 1; ++attempt) {
        const auto& src = map.nodes()[std::uniform_int_distribution<std::size_t>(0, map.nodes().size() - 1)(rng)];
        const auto& dst = map.nodes()[std::uniform_int_distribution<std::size_t>(0, map.nodes().size() - 1)(rng)];
        if (src.id == dst.id || expected_kind(src.kind, dst.kind)) continue;
        bool rejected = false;
        try {
            mutable_map.add_edge(src.id, dst.id, Sign::Positive);
        } catch (const Error& e) {
            rejected = e.code() == ErrorCode::IllegalEndpointPair;
        }
        try {
            mutable_map.add_edge(src.id, dst.id);
        } catch (const Error& e) {
            rejected = rejected && e.code() == ErrorCode::IllegalEndpointPair;
        }
        c.check(rejected && snapshot(mutable_map) == before, "illegal endpoint pair rejected atomically",
                std::string(to_string(src.kind)) + "->" + std::string(to_string(dst.kind)));
        ++report.illegal_pairs_rejected;
    }

    // Cycle injection: close any existing path between two concepts.
    std::vector<std::pair<std::string, std::string>> paths;
    for (const auto& e : map.edges()) {
        if (e.kind == EdgeKind::Influence && map.find_node(e.src)->kind == NodeKind::Concept) paths.emplace_back(e.src, e.dst);
    }
    if (!paths.empty()) {
        // Walk forward from a random edge to get a longer path.
        auto [from, to] = paths[std::uniform_int_distribution<std::size_t>(0, paths.size() - 1)(rng)];
        for (const auto& e : map.edges()) {
            if (e.src == to && e.kind == EdgeKind::Influence) {
                to = e.dst;
                break;
            }
        }
        const auto path = map.find_path(from, to);
        c.check(path.has_value(), "find_path finds existing path", tag);
        bool rejected = false;
        std::vector<std::string> cycle;
        try {
            mutable_map.add_edge(to, from, Sign::Negative);
        } catch (const Error& e) {
            rejected = e.code() == ErrorCode::WouldCreateCycle;
            cycle = e.subjects();
        }
        const bool closed = cycle.size() >= 3 && cycle.front() == to && cycle.back() == to;
        c.check(rejected && closed && snapshot(mutable_map) == before, "injected cycle rejected atomically", tag);

        // The same cycle through the text format and through unchecked insertion.
        const auto* fs = map.find_node(from);
        const auto* ts = map.find_node(to);
        const auto bad = text + "influences " + dsl::quote(ts->label) + " -(+)-> " + dsl::quote(fs->label) + "\n";
        const auto bad_parse = dsl::parse(bad);
        c.check(!bad_parse.ok() && !bad_parse.errors.empty() && bad_parse.errors.front().code == "WouldCreateCycle",
                "cyclic source rejected by the parser", tag);
        auto raw = map;
        raw.insert_edge_unchecked({"injected", to, from, EdgeKind::Influence, Sign::Positive});
        const auto diags = validate(raw);
        c.check(std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.code == "Cycle"; }),
                "validate reports injected cycle", tag);
        ++report.cycles_injected;
    }

    // Registry summary partitions the hypotheses.
    Registry registry(hyps);
    static const ValidationStatus statuses[] = {ValidationStatus::Validated, ValidationStatus::Refuted,
                                                ValidationStatus::NotValidated};
    static const RiskLevel risks[] = {RiskLevel::Low, RiskLevel::Medium, RiskLevel::High};
    for (const auto& h : hyps) {
        const auto pick = std::uniform_int_distribution<int>(0, 4)(rng);
        if (pick == 4) continue;
        const auto status = statuses[pick % 3];
        std::optional<RiskLevel> risk;
        if (pick != 3) risk = risks[pick % 3];
        std::vector<Evidence> evidence;
        if (status == ValidationStatus::Validated) evidence.push_back({EvidenceSource::OwnExperience, "", ""});
        registry.assess(h.id, status, risk, evidence, "2026-01-01T00:00:00Z");
    }
    for (bool fold : {true, false}) {
        const auto table = summarize(registry, hyps, fold);
        c.check(table.total() == hyps.size(), "summary partitions hypotheses", tag);
    }
    const auto prioritized = prioritize(hyps, registry.current_index());
    c.check(prioritized.size() == hyps.size() &&
                std::is_permutation(prioritized.begin(), prioritized.end(), hyps.begin()),
            "prioritize is a permutation", tag);
}

void check_session(std::mt19937_64& rng, Checker& c) {
    auto session = random_session(rng);
    const auto log = session.log_jsonl();
    std::string tag = "session with " + std::to_string(session.map().nodes().size()) + " nodes";
    try {
        auto replayed = ElicitationSession::replay(log);
        c.check(structurally_equal(replayed.map(), session.map()) &&
                    map_to_json(replayed.map()) == map_to_json(session.map()),
                "session replay reproduces the map", tag);
        c.check(replayed.phase() == session.phase() && replayed.confirmed() == session.confirmed(),
                "session replay reproduces the phase", tag);
        c.check(replayed.log_jsonl() == log, "session replay reproduces the log", tag);
        const auto a = session.finish();
        const auto b = replayed.finish();
        c.check(a.hypotheses == b.hypotheses && a.unsaturated_edges == b.unsaturated_edges,
                "session replay reproduces hypotheses", tag);
        c.check(!has_errors(validate(a.map)), "session maps are valid", tag);
    } catch (const std::exception& e) {
        c.check(false, "session replay", tag + ": " + e.what());
    }
}

}  // namespace

PropertyReport run_property_suite(std::uint64_t seed, std::size_t maps, std::size_t sessions) {
    PropertyReport report;
    Checker c(report);
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(seed);

    // All sixteen ordered kind pairs once.
    std::size_t rejected = 0;
    for (auto s : kAllNodeKinds) {
        for (auto d : kAllNodeKinds) {
            const auto derived = edge_kind_for(s, d);
            c.check(derived == expected_kind(s, d), "edge kind derivation",
                    std::string(to_string(s)) + "->" + std::string(to_string(d)));
            if (!derived) ++rejected;
        }
    }
    // Four legal ordered pairs: product->feature, customer->concept, feature->concept, concept->concept.
    c.check(rejected == 12, "twelve illegal pairs", std::to_string(rejected));

    for (std::size_t i = 0; i < maps; ++i) {
        try {
            const auto map = random_map(rng);
            report.max_nodes_seen = std::max(report.max_nodes_seen, map.nodes().size());
            check_map(map, rng, c, report);
        } catch (const std::exception& e) {
            c.check(false, "map properties", std::string("exception: ") + e.what());
        }
        ++report.maps;
    }
    for (std::size_t i = 0; i < sessions; ++i) {
        check_session(rng, c);
        ++report.sessions;
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace hymap::testing
