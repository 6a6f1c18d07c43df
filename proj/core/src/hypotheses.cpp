// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "hymap/hypotheses.hpp"

#include "hymap/error.hpp"
#include "hymap/validation.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>

namespace hymap {

std::string_view verb_for(Sign sign) noexcept {
    switch (sign) {
    case Sign::Positive: return "increases";
    case Sign::Negative: return "decreases";
    case Sign::Neutral: return "does not affect";
    }
    return "does not affect";
}

std::string hypothesis_id_for(std::string_view edge_id) { return "hyp-" + std::string(edge_id); }

std::string hypothesis_text(const CognitiveMap& map, const MapEdge& edge) {
    const auto* src = map.find_node(edge.src);
    const auto* dst = map.find_node(edge.dst);
    if (src == nullptr || dst == nullptr)
        throw Error(ErrorCode::UnknownId, "edge \"" + edge.id + "\" has a missing endpoint", {edge.id});
    switch (edge.kind) {
    case EdgeKind::Offering:
        return "the team developing " + src->label + " is capable of implementing " + dst->label;
    case EdgeKind::Influence:
        return src->label + " " + std::string(verb_for(edge.sign.value_or(Sign::Neutral))) + " " + dst->label;
    case EdgeKind::Perception:
        return src->label + " " + std::string(to_string(edge.verb)) + " " + dst->label;
    }
    return {};
}

std::vector<Hypothesis> generate(const CognitiveMap& map) {
    if (has_errors(validate(map)))
        throw Error(ErrorCode::InvalidMap, "cannot generate hypotheses from a map with validation errors");
    std::vector<Hypothesis> out;
    out.reserve(map.edges().size());
    for (const auto& e : map.edges()) {
        out.push_back({hypothesis_id_for(e.id), e.id, categorize(e), hypothesis_text(map, e), std::nullopt, false});
    }
    return out;
}

std::vector<Hypothesis> regenerate(const CognitiveMap& map, const std::vector<Hypothesis>& previous) {
    std::unordered_map<std::string, const Hypothesis*> by_edge;
    for (const auto& h : previous) by_edge.emplace(h.edge_id, &h);

    std::vector<Hypothesis> out;
    for (auto fresh : generate(map)) {
        auto it = by_edge.find(fresh.edge_id);
        if (it == by_edge.end()) {
            out.push_back(std::move(fresh));
            continue;
        }
        Hypothesis kept = *it->second;
        if (kept.generated_text != fresh.generated_text) {
            kept.generated_text = std::move(fresh.generated_text);
            kept.stale = true;
        }
        kept.kind = fresh.kind;
        out.push_back(std::move(kept));
    }
    return out;
}

std::vector<Hypothesis> prioritize(std::vector<Hypothesis> hypotheses, const AssessmentIndex& current) {
    auto key = [&](const Hypothesis& h) {
        const auto it = current.find(h.id);
        const bool validated = it != current.end() && it->second.status == ValidationStatus::Validated;
        const auto risk = it != current.end() && it->second.risk ? *it->second.risk : RiskLevel::High;
        // Lower sorts first: High risk (2) must come before Low (0).
        return std::make_tuple(validated ? 1 : 0, static_cast<int>(h.kind), 2 - static_cast<int>(risk));
    };
    std::stable_sort(hypotheses.begin(), hypotheses.end(),
                     [&](const Hypothesis& a, const Hypothesis& b) { return key(a) < key(b); });
    return hypotheses;
}

nlohmann::json hypotheses_to_json(const std::vector<Hypothesis>& hypotheses, const AssessmentIndex& current) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& h : hypotheses) {
        nlohmann::json item{{"id", h.id},
                            {"edge_id", h.edge_id},
                            {"kind", to_string(h.kind)},
                            {"generated_text", h.generated_text},
                            {"edited_text", h.edited_text ? nlohmann::json(*h.edited_text) : nlohmann::json()},
                            {"stale", h.stale},
                            {"statement", h.statement()}};
        if (auto it = current.find(h.id); it != current.end()) {
            item["status"] = to_string(it->second.status);
            item["risk"] = it->second.risk ? nlohmann::json(to_string(*it->second.risk)) : nlohmann::json();
        } else {
            item["status"] = to_string(ValidationStatus::Unassessed);
            item["risk"] = nullptr;
        }
        out.push_back(std::move(item));
    }
    return out;
}

std::vector<Hypothesis> hypotheses_from_json(const nlohmann::json& doc) {
    if (!doc.is_array()) throw Error(ErrorCode::SchemaViolation, "expected an array of hypotheses", {}, "");
    std::vector<Hypothesis> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        const auto ptr = "/" + std::to_string(i);
        try {
            Hypothesis h;
            h.id = item.at("id").get<std::string>();
            h.edge_id = item.at("edge_id").get<std::string>();
            const auto kind = parse_hypothesis_kind(item.at("kind").get<std::string>());
            if (!kind) throw Error(ErrorCode::SchemaViolation, ptr + "/kind: unknown kind", {}, ptr + "/kind");
            h.kind = *kind;
            h.generated_text = item.at("generated_text").get<std::string>();
            if (item.contains("edited_text") && item["edited_text"].is_string())
                h.edited_text = item["edited_text"].get<std::string>();
            h.stale = item.value("stale", false);
            out.push_back(std::move(h));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::SchemaViolation, ptr + ": " + e.what(), {}, ptr);
        }
    }
    return out;
}

std::string hypotheses_to_markdown(const std::vector<Hypothesis>& hypotheses, const AssessmentIndex& current) {
    auto cell = [](std::string text) {
        std::string out;
        for (char c : text) {
            if (c == '|') out += "\\|";
            else if (c == '\n') out += ' ';
            else out.push_back(c);
        }
        return out;
    };
    std::string out = "| id | kind | statement | status | risk |\n|---|---|---|---|---|\n";
    for (const auto& h : hypotheses) {
        std::string status(to_string(ValidationStatus::Unassessed));
        std::string risk = "-";
        if (auto it = current.find(h.id); it != current.end()) {
            status = std::string(to_string(it->second.status));
            if (it->second.risk) risk = std::string(to_string(*it->second.risk));
        }
        out += "| " + h.id + " | " + std::string(to_string(h.kind)) + " | " + cell(h.statement()) +
               (h.stale ? " (stale)" : "") + " | " + status + " | " + risk + " |\n";
    }
    return out;
}

}  // namespace hymap
