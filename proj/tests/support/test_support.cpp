// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "test_support.hpp"

#include "hymap/dsl.hpp"
#include "hymap/error.hpp"
#include "hymap/hypotheses.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

#ifndef HYMAP_CORPUS_DIR
#error "HYMAP_CORPUS_DIR must be defined"
#endif
#ifndef HYMAP_SNAPSHOT_DIR
#error "HYMAP_SNAPSHOT_DIR must be defined"
#endif

namespace hymap::testing {

using nlohmann::json;

std::filesystem::path corpus_dir() { return HYMAP_CORPUS_DIR; }
std::filesystem::path snapshot_dir() { return HYMAP_SNAPSHOT_DIR; }
std::filesystem::path corpus_path(std::string_view name) { return corpus_dir() / name; }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

CognitiveMap load_fixture(std::string_view name) { return load_fixture_path(corpus_path(name)); }

CognitiveMap load_fixture_path(const std::filesystem::path& path) {
    const auto name = path.filename().string();
    auto result = dsl::parse(read_file(path));
    if (!result.ok()) {
        std::string msg = "fixture " + std::string(name) + " does not parse:";
        for (const auto& d : result.errors) msg += " " + std::to_string(d.line) + ":" + d.code;
        throw std::runtime_error(msg);
    }
    return std::move(*result.map);
}

TempDir::TempDir(std::string_view prefix) {
    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    for (;;) {
        auto candidate = std::filesystem::temp_directory_path() /
                         (std::string(prefix) + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
        if (std::filesystem::create_directories(candidate)) {
            path_ = candidate;
            return;
        }
    }
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

namespace {

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& items) {
    return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::size_t below(std::mt19937_64& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

const std::vector<std::string> kWords = {
    "network", "efficiency", "trust", "gear", "difficulty", "satisfaction", "time", "cost",
    "search", "players", "patient", "quality", "fun", "results", "access", "reviews",
};
const std::vector<std::string> kAwkward = {"\"quoted\"", "back\\slash", "caf\xc3\xa9", "a -> b", "#hash", "(o)"};

std::string label_for(std::mt19937_64& rng, NodeKind kind, std::size_t index, bool awkward) {
    std::string label(to_string(kind));
    label += " " + pick(rng, kWords);
    if (awkward && coin(rng, 0.15)) label += " " + pick(rng, kAwkward);
    // The index keeps normalized labels unique.
    label += " " + std::to_string(index);
    return label;
}

std::string sign_text(std::mt19937_64& rng) {
    static const std::vector<std::string> signs = {"+", "-", "o"};
    return pick(rng, signs);
}

}  // namespace

CognitiveMap random_map(std::mt19937_64& rng, const MapGenOptions& options) {
    CognitiveMap map("random");
    const std::size_t n = 1 + below(rng, std::max<std::size_t>(options.max_nodes, 1));
    map.add_node(NodeKind::Product, label_for(rng, NodeKind::Product, 0, options.awkward_labels));
    static const std::vector<NodeKind> others = {NodeKind::Customer, NodeKind::Feature, NodeKind::Concept,
                                                 NodeKind::Concept};
    for (std::size_t i = 1; i < n; ++i) {
        const auto kind = pick(rng, others);
        const auto id = map.add_node(kind, label_for(rng, kind, i, options.awkward_labels));
        if (coin(rng, 0.1)) map.set_node_notes(id, "note " + std::to_string(i));
    }
    const auto nodes = map.nodes();
    const std::size_t attempts = n * options.edge_attempts_per_node * 4;
    for (std::size_t a = 0; a < attempts && nodes.size() > 1; ++a) {
        const auto& src = pick(rng, nodes);
        const auto& dst = pick(rng, nodes);
        const auto kind = edge_kind_for(src.kind, dst.kind);
        if (!kind || src.id == dst.id) continue;
        std::optional<Sign> sign;
        if (*kind == EdgeKind::Influence) sign = kAllSigns[below(rng, 3)];
        const auto verb = (*kind == EdgeKind::Perception && coin(rng, 0.2)) ? ProblemVerb::WouldLikeTo
                                                                             : ProblemVerb::Has;
        try {
            const auto id = map.add_edge(src.id, dst.id, sign, verb);
            if (coin(rng, 0.3)) map.set_saturated(id, true);
            if (coin(rng, 0.05)) map.set_rationale(id, "because " + pick(rng, kWords));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::WouldCreateCycle && e.code() != ErrorCode::DuplicateEdge) throw;
        }
    }
    return map;
}

CognitiveMap shuffled_copy(const CognitiveMap& map, std::mt19937_64& rng) {
    CognitiveMap copy(map.title(), map.id());
    std::map<std::string, std::string> ids;
    // Product first; add_edge needs it only for offerings, but a decoy
    // counter bump makes the new ids differ from the old ones.
    copy.add_node(NodeKind::Concept, "decoy");
    auto nodes = map.nodes();
    std::shuffle(nodes.begin(), nodes.end(), rng);
    for (const auto& n : nodes) ids[n.id] = copy.add_node(n.kind, n.label, n.notes);
    copy.remove_element(copy.find_by_label(NodeKind::Concept, "decoy")->id);
    auto edges = map.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    for (const auto& e : edges) {
        const auto id = copy.add_edge(ids.at(e.src), ids.at(e.dst), e.sign, e.verb);
        if (e.saturated) copy.set_saturated(id, true);
        if (!e.rationale.empty()) copy.set_rationale(id, e.rationale);
    }
    return copy;
}

namespace {

json random_payload(std::mt19937_64& rng, const ElicitationSession& session, const Prompt& p,
                    std::size_t& counter, std::size_t node_budget) {
    const auto& m = session.map();
    const auto fresh = [&](std::string_view what) { return std::string(what) + " " + std::to_string(++counter); };
    const bool full = m.nodes().size() + 2 >= node_budget;
    if (p.phase != Phase::Naming && p.phase != Phase::Review && coin(rng, 0.03)) return {{"skip", true}};
    switch (p.phase) {
    case Phase::Naming: return fresh("product");
    case Phase::Customers: {
        json list = json::array();
        for (std::size_t i = below(rng, 3); i > 0; --i) list.push_back(fresh("customer"));
        return list;
    }
    case Phase::Aspects: {
        json list = json::array();
        for (std::size_t i = full ? 0 : below(rng, 3); i > 0; --i) {
            const auto& existing = p.context.value("existing_concepts", json::array());
            if (!existing.empty() && coin(rng, 0.2)) {
                list.push_back(existing[below(rng, existing.size())]);
            } else if (coin(rng, 0.2)) {
                list.push_back({{"label", fresh("aspect")}, {"verb", "would like to"}});
            } else {
                list.push_back(fresh("aspect"));
            }
        }
        return list;
    }
    case Phase::Features: {
        json list = json::array();
        if (p.shape == AnswerShape::TextList) {
            for (std::size_t i = full ? 0 : below(rng, 4); i > 0; --i) list.push_back(fresh("feature"));
            return list;
        }
        const auto& candidates = p.context.value("candidates", json::array());
        for (const auto& c : candidates) {
            if (coin(rng, 0.5)) list.push_back({{"target", c}, {"sign", sign_text(rng)}});
        }
        return list;
    }
    case Phase::Deepening: {
        if (full || coin(rng, 0.55)) return coin(rng, 0.5) ? json("saturated") : json{{"saturated", true}};
        const bool from_customer = p.context.value("kind", "") == "perception";
        return {{"intermediate", fresh("concept")},
                {"signs", json::array({from_customer ? json() : json(sign_text(rng)), sign_text(rng)})}};
    }
    case Phase::CrossLinking: {
        json list = json::array();
        const auto& candidates = p.context.value("candidates", json::array());
        if (!candidates.empty() && coin(rng, 0.5)) {
            list.push_back({{"target", candidates[below(rng, candidates.size())]},
                            {"sign", sign_text(rng)},
                            {"direction", coin(rng, 0.5) ? "out" : "in"}});
        }
        return list;
    }
    case Phase::Review: {
        if (coin(rng, 0.6)) return true;
        std::vector<const MapNode*> concepts;
        for (const auto& n : m.nodes()) {
            if (n.kind == NodeKind::Concept) concepts.push_back(&n);
        }
        switch (below(rng, 3)) {
        case 0: return {{"command", "add"}, {"kind", "concept"}, {"label", fresh("reviewed")}};
        case 1:
            if (concepts.empty()) return true;
            return {{"command", "substitute"}, {"id", pick(rng, concepts)->id}, {"label", fresh("renamed")}};
        default:
            if (concepts.empty()) return true;
            return {{"command", "remove"}, {"id", pick(rng, concepts)->label}};
        }
    }
    case Phase::Done: break;
    }
    return json();
}

json fallback_payload(const Prompt& p) {
    switch (p.phase) {
    case Phase::Deepening: return "saturated";
    case Phase::Review: return true;
    case Phase::Naming: return "fallback product";
    default: return {{"skip", true}};
    }
}

}  // namespace

ElicitationSession random_session(std::mt19937_64& rng, std::size_t node_budget) {
    auto session = ElicitationSession::start("random", "random-session", node_budget);
    std::size_t counter = 0;
    for (int guard = 0; guard < 2000; ++guard) {
        const auto& prompt = session.current_prompt();
        if (!prompt) return session;
        const Prompt p = *prompt;
        try {
            session.answer(p.id, random_payload(rng, session, p, counter, node_budget));
        } catch (const Error&) {
            // Rejected answers leave the session untouched; move on.
            session.answer(p.id, fallback_payload(p));
        }
    }
    throw std::runtime_error("random session did not terminate");
}

std::string normalize_statement(std::string_view text) {
    std::string cleaned;
    for (char c : text) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalnum(u) || u >= 0x80) {
            cleaned.push_back(static_cast<char>(std::tolower(u)));
        } else {
            cleaned.push_back(' ');
        }
    }
    std::istringstream words(cleaned);
    std::string word;
    std::string out;
    while (words >> word) {
        if (word == "a" || word == "an" || word == "the") continue;
        if (word == "have") word = "has";
        if (!out.empty()) out.push_back(' ');
        out += word;
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> statement_set(const CognitiveMap& map) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& h : generate(map)) out.emplace_back(std::string(to_string(h.kind)), h.statement());
    std::sort(out.begin(), out.end());
    return out;
}

nlohmann::json replay_via_service(service::Service& svc, std::string_view jsonl) {
    auto call = [&](service::Request r) {
        auto res = svc.handle(r);
        if (res.status / 100 != 2)
            throw std::runtime_error(r.method + " " + r.path + " -> " + std::to_string(res.status) + " " + res.body.dump());
        return res.body;
    };
    std::istringstream lines{std::string(jsonl)};
    std::string line;
    std::string session_id;
    std::string token;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        const auto event = json::parse(line);
        const auto kind = event.at("event").get<std::string>();
        if (kind == "start") {
            const auto body = call({"POST", "/sessions", {},
                                    json{{"title", event.value("title", "")},
                                         {"node_budget", event.value("node_budget", 200)}}.dump(), ""});
            session_id = body.at("session_id");
            token = body.at("token");
        } else if (kind == "answer") {
            call({"POST", "/sessions/" + session_id + "/answer", {},
                  json{{"prompt_id", event.at("prompt_id")}, {"payload", event.at("payload")}}.dump(),
                  "Bearer " + token});
        } else if (kind == "finish") {
            return call({"POST", "/sessions/" + session_id + "/finish", {}, "", "Bearer " + token});
        }
    }
    throw std::runtime_error("log has no finish event");
}

namespace {

std::string dot_unescape(const std::string& text) {
    std::string out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\\' && i + 1 < text.size()) ++i;
        out.push_back(text[i]);
    }
    return out;
}

}  // namespace

std::vector<std::string> check_dot(const CognitiveMap& map, std::string_view dot) {
    static const std::regex node_re(R"re(^  (n\d+) \[label="((?:[^"\\]|\\.)*)", shape=(\w+)(, style=dashed)?\];$)re");
    static const std::regex edge_re(R"re(^  (n\d+) -> (n\d+)(?: \[(?:label="([^"]*)"|(constraint=false))\])?;$)re");
    static const std::regex rank_re(R"re(^  \{ rank=same;( n\d+;)+ \}$)re");
    std::vector<std::string> problems;
    std::istringstream in{std::string(dot)};
    std::string line;
    std::getline(in, line);
    if (line != "digraph hymap {") problems.push_back("missing digraph header");

    // Shape per kind, as the notation prescribes.
    const auto shape_of = [](NodeKind k) -> std::pair<std::string, bool> {
        switch (k) {
        case NodeKind::Customer: return {"circle", false};
        case NodeKind::Product: return {"ellipse", false};
        case NodeKind::Feature: return {"box", true};
        case NodeKind::Concept: return {"box", false};
        }
        return {"", false};
    };

    std::map<std::string, const MapNode*> by_name;
    std::map<std::string, int> node_statements;
    std::multiset<std::tuple<std::string, std::string, std::string>> seen_edges;
    while (std::getline(in, line)) {
        std::smatch m;
        if (std::regex_match(line, m, node_re)) {
            const auto label = dot_unescape(m[2]);
            const MapNode* node = nullptr;
            for (const auto& n : map.nodes()) {
                if (n.label == label && shape_of(n.kind) == std::pair<std::string, bool>{m[3], m[4].matched}) node = &n;
            }
            if (node == nullptr) {
                problems.push_back("node statement without a matching node: " + line);
                continue;
            }
            by_name[m[1]] = node;
            ++node_statements[node->id];
        } else if (std::regex_match(line, m, edge_re)) {
            if (!by_name.count(m[1]) || !by_name.count(m[2])) {
                problems.push_back("edge before its nodes: " + line);
                continue;
            }
            std::string label = m[3].matched ? std::string(m[3]) : std::string();
            seen_edges.emplace(by_name[m[1]]->id, by_name[m[2]]->id, label);
        } else if (line.rfind("  graph [", 0) == 0 || line.rfind("  node [", 0) == 0 ||
                   line.rfind("  edge [", 0) == 0 || std::regex_match(line, rank_re) || line == "}") {
            continue;
        } else {
            problems.push_back("unexpected line: " + line);
        }
    }
    for (const auto& n : map.nodes()) {
        if (node_statements[n.id] != 1)
            problems.push_back(n.label + " has " + std::to_string(node_statements[n.id]) + " node statements");
    }
    std::multiset<std::tuple<std::string, std::string, std::string>> expected_edges;
    for (const auto& e : map.edges()) {
        std::string label;
        if (e.kind == EdgeKind::Influence) {
            label = *e.sign == Sign::Positive ? "+" : *e.sign == Sign::Negative ? "-" : "/o/";
        }
        expected_edges.emplace(e.src, e.dst, label);
    }
    if (seen_edges != expected_edges) {
        problems.push_back("edge statements differ: " + std::to_string(seen_edges.size()) + " seen, " +
                           std::to_string(expected_edges.size()) + " expected");
    }
    return problems;
}

namespace {

using Row = std::array<std::size_t, 3>;

PublishedSummary published(std::string_view fixture, Row pv, Row pn, Row vv, Row vn, Row rv, Row rn,
                           std::size_t total) {
    PublishedSummary s{fixture, {}, total};
    s.cells[0] = {pv, pn};
    s.cells[1] = {vv, vn};
    s.cells[2] = {rv, rn};
    return s;
}

}  // namespace

const std::vector<PublishedSummary>& published_summaries() {
    static const std::vector<PublishedSummary> rows = {
        published("case_e", {0, 3, 1}, {0, 0, 0}, {0, 3, 8}, {0, 1, 0}, {0, 0, 0}, {1, 1, 4}, 22),
        published("case_f", {2, 0, 5}, {0, 1, 0}, {0, 0, 0}, {4, 1, 5}, {2, 0, 3}, {0, 0, 0}, 23),
        published("case_g", {0, 0, 2}, {0, 0, 0}, {1, 4, 1}, {0, 3, 1}, {0, 0, 4}, {0, 0, 0}, 16),
    };
    return rows;
}

}  // namespace hymap::testing
