// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "hymap/json_io.hpp"

#include "hymap/error.hpp"
#include "hymap/validation.hpp"

#include <cstdio>
#include <ctime>
#include <set>

namespace hymap {

using nlohmann::json;

std::string format_timestamp(std::chrono::system_clock::time_point tp) {
    const std::time_t t = std::chrono::system_clock::to_time_t(tp);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::optional<std::chrono::system_clock::time_point> parse_timestamp(std::string_view text) {
    std::tm tm{};
    char zone = 0;
    const std::string s(text);
    if (std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &tm.tm_year, &tm.tm_mon, &tm.tm_mday, &tm.tm_hour,
                    &tm.tm_min, &tm.tm_sec, &zone) != 7 ||
        zone != 'Z')
        return std::nullopt;
    tm.tm_year -= 1900;
    tm.tm_mon -= 1;
    return std::chrono::system_clock::from_time_t(timegm(&tm));
}

json node_to_json(const MapNode& n) {
    return {{"id", n.id}, {"kind", to_string(n.kind)}, {"label", n.label}, {"notes", n.notes}};
}

json edge_to_json(const MapEdge& e) {
    return {{"id", e.id},
            {"src", e.src},
            {"dst", e.dst},
            {"kind", to_string(e.kind)},
            {"sign", e.sign ? json(symbol(*e.sign)) : json(nullptr)},
            {"saturated", e.saturated},
            {"rationale", e.rationale},
            {"verb", to_string(e.verb)}};
}

json map_to_json(const CognitiveMap& map) {
    json nodes = json::array();
    for (const auto& n : map.nodes()) {
        nodes.push_back(node_to_json(n));
    }
    json edges = json::array();
    for (const auto& e : map.edges()) {
        edges.push_back(edge_to_json(e));
    }
    return {{"version", kMapSchemaVersion},
            {"id", map.id()},
            {"title", map.title()},
            {"created", format_timestamp(map.created())},
            {"modified", format_timestamp(map.modified())},
            {"nodes", std::move(nodes)},
            {"edges", std::move(edges)}};
}

namespace {

[[noreturn]] void schema_error(const std::string& pointer, const std::string& message) {
    throw Error(ErrorCode::SchemaViolation, pointer + ": " + message, {}, pointer);
}

const json& member(const json& obj, const std::string& key, const std::string& pointer) {
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(pointer + "/" + key, "required field is missing");
    return *it;
}

std::string string_field(const json& obj, const std::string& key, const std::string& pointer,
                         bool required = true) {
    if (!required && !obj.contains(key)) return {};
    const auto& v = member(obj, key, pointer);
    if (!required && v.is_null()) return {};
    if (!v.is_string()) schema_error(pointer + "/" + key, "expected a string");
    return v.get<std::string>();
}

}  // namespace

CognitiveMap map_from_json(const json& doc) {
    if (!doc.is_object()) schema_error("", "expected an object");
    const auto& version = member(doc, "version", "");
    if (!version.is_number_integer()) schema_error("/version", "expected an integer");
    if (version.get<int>() != kMapSchemaVersion)
        throw Error(ErrorCode::UnsupportedVersion,
                    "unsupported map schema version " + version.dump() + " (expected " +
                        std::to_string(kMapSchemaVersion) + ")",
                    {}, "/version");

    CognitiveMap map(string_field(doc, "title", "", false), string_field(doc, "id", "", false));
    if (map.id().empty()) map.set_id("map");

    const auto& nodes = member(doc, "nodes", "");
    if (!nodes.is_array()) schema_error("/nodes", "expected an array");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto ptr = "/nodes/" + std::to_string(i);
        const auto& n = nodes[i];
        if (!n.is_object()) schema_error(ptr, "expected an object");
        MapNode node;
        node.id = string_field(n, "id", ptr);
        const auto kind = parse_node_kind(string_field(n, "kind", ptr));
        if (!kind) schema_error(ptr + "/kind", "expected product, customer, feature or concept");
        node.kind = *kind;
        node.label = string_field(n, "label", ptr);
        node.notes = string_field(n, "notes", ptr, false);
        if (!ids.insert(node.id).second) schema_error(ptr + "/id", "duplicate id \"" + node.id + "\"");
        map.insert_node_unchecked(std::move(node));
    }

    const auto& edges = member(doc, "edges", "");
    if (!edges.is_array()) schema_error("/edges", "expected an array");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto ptr = "/edges/" + std::to_string(i);
        const auto& e = edges[i];
        if (!e.is_object()) schema_error(ptr, "expected an object");
        MapEdge edge;
        edge.id = string_field(e, "id", ptr);
        edge.src = string_field(e, "src", ptr);
        edge.dst = string_field(e, "dst", ptr);
        for (const auto* end : {&edge.src, &edge.dst}) {
            if (map.find_node(*end) == nullptr) {
                const auto where = ptr + (end == &edge.src ? "/src" : "/dst");
                throw Error(ErrorCode::DanglingReference, where + ": no node with id \"" + *end + "\"", {*end},
                            where);
            }
        }
        const auto kind = parse_edge_kind(string_field(e, "kind", ptr));
        if (!kind) schema_error(ptr + "/kind", "expected offering, influence or perception");
        edge.kind = *kind;
        if (e.contains("sign") && !e["sign"].is_null()) {
            if (!e["sign"].is_string()) schema_error(ptr + "/sign", "expected \"+\", \"-\", \"o\" or null");
            edge.sign = parse_sign(e["sign"].get<std::string>());
            if (!edge.sign) schema_error(ptr + "/sign", "expected \"+\", \"-\", \"o\" or null");
        }
        if (e.contains("saturated")) {
            if (!e["saturated"].is_boolean()) schema_error(ptr + "/saturated", "expected a boolean");
            edge.saturated = e["saturated"].get<bool>();
        }
        edge.rationale = string_field(e, "rationale", ptr, false);
        if (e.contains("verb")) {
            const auto verb = parse_problem_verb(string_field(e, "verb", ptr));
            if (!verb) schema_error(ptr + "/verb", "expected \"has\" or \"would like to\"");
            edge.verb = *verb;
        }
        if (!ids.insert(edge.id).second) schema_error(ptr + "/id", "duplicate id \"" + edge.id + "\"");
        map.insert_edge_unchecked(std::move(edge));
    }

    const auto diagnostics = validate(map);
    if (has_errors(diagnostics)) {
        std::vector<std::string> codes;
        std::string message = "map breaks notation rules:";
        for (const auto& d : diagnostics) {
            if (d.severity != Severity::Error) continue;
            codes.push_back(d.code);
            message += " " + d.code + " (" + d.message + ");";
        }
        throw Error(ErrorCode::InvalidMap, message, std::move(codes));
    }

    auto created = map.created();
    auto modified = map.modified();
    if (doc.contains("created") && doc["created"].is_string())
        created = parse_timestamp(doc["created"].get<std::string>()).value_or(created);
    if (doc.contains("modified") && doc["modified"].is_string())
        modified = parse_timestamp(doc["modified"].get<std::string>()).value_or(modified);
    map.set_timestamps(created, modified);
    return map;
}

std::string export_json(const CognitiveMap& map, int indent) { return map_to_json(map).dump(indent); }

CognitiveMap import_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SchemaViolation, std::string("malformed JSON: ") + e.what(), {}, "");
    }
    return map_from_json(doc);
}

}  // namespace hymap
