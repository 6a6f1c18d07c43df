// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "hymap/elicitation.hpp"

#include "hymap/analysis.hpp"
#include "hymap/error.hpp"
#include "hymap/json_io.hpp"
#include "hymap/validation.hpp"

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <unordered_map>

namespace hymap {

using nlohmann::json;

std::string_view to_string(Phase phase) noexcept {
    switch (phase) {
    case Phase::Naming: return "naming";
    case Phase::Customers: return "customers";
    case Phase::Aspects: return "aspects";
    case Phase::Features: return "features";
    case Phase::Deepening: return "deepening";
    case Phase::CrossLinking: return "cross-linking";
    case Phase::Review: return "review";
    case Phase::Done: return "done";
    }
    return "done";
}

std::optional<Phase> parse_phase(std::string_view text) noexcept {
    for (auto p : {Phase::Naming, Phase::Customers, Phase::Aspects, Phase::Features, Phase::Deepening,
                   Phase::CrossLinking, Phase::Review, Phase::Done}) {
        if (to_string(p) == text) return p;
    }
    return std::nullopt;
}

std::string_view to_string(AnswerShape shape) noexcept {
    switch (shape) {
    case AnswerShape::Text: return "text";
    case AnswerShape::TextList: return "text-list";
    case AnswerShape::NodeChoice: return "node-choice";
    case AnswerShape::YesNo: return "yes-no";
    case AnswerShape::EdgeAnnotation: return "edge-annotation";
    }
    return "text";
}

std::string_view to_string(DeltaOp op) noexcept {
    switch (op) {
    case DeltaOp::AddNode: return "add_node";
    case DeltaOp::UpdateNode: return "update_node";
    case DeltaOp::RemoveNode: return "remove_node";
    case DeltaOp::AddEdge: return "add_edge";
    case DeltaOp::UpdateEdge: return "update_edge";
    case DeltaOp::RemoveEdge: return "remove_edge";
    }
    return "add_node";
}

json prompt_to_json(const Prompt& p) {
    return {{"id", p.id},
            {"phase", to_string(p.phase)},
            {"question", p.question},
            {"shape", to_string(p.shape)},
            {"subjects", p.subjects},
            {"context", p.context}};
}

std::vector<Delta> diff_maps(const CognitiveMap& before, const CognitiveMap& after) {
    std::vector<Delta> removed, updated, added;
    for (const auto& e : before.edges()) {
        if (after.find_edge(e.id) == nullptr) removed.push_back({DeltaOp::RemoveEdge, e.id, edge_to_json(e)});
    }
    for (const auto& n : before.nodes()) {
        if (after.find_node(n.id) == nullptr) removed.push_back({DeltaOp::RemoveNode, n.id, node_to_json(n)});
    }
    for (const auto& n : after.nodes()) {
        const auto* old = before.find_node(n.id);
        if (old == nullptr) added.push_back({DeltaOp::AddNode, n.id, node_to_json(n)});
        else if (!(*old == n)) updated.push_back({DeltaOp::UpdateNode, n.id, node_to_json(n)});
    }
    for (const auto& e : after.edges()) {
        const auto* old = before.find_edge(e.id);
        if (old == nullptr) added.push_back({DeltaOp::AddEdge, e.id, edge_to_json(e)});
        else if (!(*old == e)) updated.push_back({DeltaOp::UpdateEdge, e.id, edge_to_json(e)});
    }
    std::vector<Delta> out = std::move(removed);
    out.insert(out.end(), updated.begin(), updated.end());
    out.insert(out.end(), added.begin(), added.end());
    return out;
}

json deltas_to_json(const std::vector<Delta>& deltas) {
    json out = json::array();
    for (const auto& d : deltas) out.push_back({{"op", to_string(d.op)}, {"id", d.id}, {"element", d.element}});
    return out;
}

namespace {

[[noreturn]] void shape_error(const std::string& prompt_id, const std::string& message) {
    throw Error(ErrorCode::ShapeMismatch, message, {}, prompt_id);
}

bool is_skip(const json& payload) {
    return payload.is_object() && payload.contains("skip") && payload["skip"] == true;
}

std::string text_of(const json& v, const std::string& prompt_id, const char* what) {
    if (!v.is_string()) shape_error(prompt_id, std::string("expected ") + what + " as a string");
    return v.get<std::string>();
}

std::optional<Sign> sign_of(const json& v, const std::string& prompt_id, bool allow_null) {
    if (v.is_null()) {
        if (!allow_null) shape_error(prompt_id, "a sign (+, - or o) is required");
        return std::nullopt;
    }
    if (!v.is_string()) shape_error(prompt_id, "expected a sign as a string");
    auto s = parse_sign(v.get<std::string>());
    if (!s) shape_error(prompt_id, "unknown sign \"" + v.get<std::string>() + "\"");
    return s;
}

/// An id, or a label of one of `kinds`.
std::string resolve(const CognitiveMap& map, const json& ref, std::initializer_list<NodeKind> kinds,
                    const std::string& prompt_id) {
    const auto text = text_of(ref, prompt_id, "a node reference");
    if (const auto* n = map.find_node(text)) {
        if (std::find(kinds.begin(), kinds.end(), n->kind) != kinds.end()) return n->id;
    }
    std::vector<std::string> hits;
    for (auto kind : kinds) {
        if (const auto* n = map.find_by_label(kind, text)) hits.push_back(n->id);
    }
    if (hits.empty()) throw Error(ErrorCode::UnknownId, "no node named \"" + text + "\"", {text}, prompt_id);
    if (hits.size() > 1)
        throw Error(ErrorCode::ShapeMismatch, "\"" + text + "\" names more than one node; use an id", hits,
                    prompt_id);
    return hits.front();
}

const json& list_of(const json& payload, const std::string& prompt_id) {
    if (!payload.is_array()) shape_error(prompt_id, "expected a list");
    return payload;
}

std::string in_quotes(std::string_view s) { return "\"" + std::string(s) + "\""; }

json concept_labels(const CognitiveMap& map, std::string_view except = {}) {
    json out = json::array();
    for (const auto& n : map.nodes()) {
        if (n.kind == NodeKind::Concept && n.id != except) out.push_back(n.label);
    }
    return out;
}

}  // namespace

ElicitationSession::ElicitationSession(std::string id, std::string title, std::size_t node_budget)
    : id_(std::move(id)), title_(std::move(title)), node_budget_(node_budget),
      clock_([] { return Clock::now(); }) {
    settle(state_);
    events_.push_back({{"event", "start"},
                       {"version", 1},
                       {"session", id_},
                       {"title", title_},
                       {"node_budget", node_budget_},
                       {"timestamp", now()}});
}

ElicitationSession ElicitationSession::start(std::string title, std::string id, std::size_t node_budget) {
    return ElicitationSession(std::move(id), std::move(title), node_budget);
}

std::string ElicitationSession::now() const { return format_timestamp(clock_()); }

const std::optional<Prompt>& ElicitationSession::next_prompt() const {
    if (done()) throw Error(ErrorCode::SessionDone, "the session is finished");
    return state_.prompt;
}

void ElicitationSession::enter(State& s, Phase phase) const {
    s.phase = phase;
    s.pending.clear();
    s.list_answered = false;
    const auto& m = s.map;
    switch (phase) {
    case Phase::Aspects:
        for (const auto& n : m.nodes())
            if (n.kind == NodeKind::Customer) s.pending.push_back(n.id);
        break;
    case Phase::Deepening:
        s.added_concepts.clear();
        for (const auto& e : m.edges())
            if (is_deepenable(e) && !e.saturated) s.pending.push_back(e.id);
        break;
    case Phase::CrossLinking:
        for (const auto& id : s.added_concepts)
            if (m.find_node(id) != nullptr) s.pending.push_back(id);
        break;
    default: break;
    }
}

void ElicitationSession::settle(State& s) const {
    s.prompt.reset();
    for (;;) {
        const auto& m = s.map;
        switch (s.phase) {
        case Phase::Naming:
        case Phase::Customers:
            s.prompt = make_prompt(s);
            return;
        case Phase::Aspects:
            while (!s.pending.empty() && m.find_node(s.pending.front()) == nullptr) s.pending.erase(s.pending.begin());
            if (s.pending.empty()) {
                enter(s, Phase::Features);
                continue;
            }
            s.prompt = make_prompt(s);
            return;
        case Phase::Features:
            if (!s.list_answered) {
                s.prompt = make_prompt(s);
                return;
            }
            while (!s.pending.empty() && m.find_node(s.pending.front()) == nullptr) s.pending.erase(s.pending.begin());
            if (s.pending.empty()) {
                enter(s, Phase::Deepening);
                continue;
            }
            s.prompt = make_prompt(s);
            return;
        case Phase::Deepening:
            while (!s.pending.empty()) {
                const auto* e = m.find_edge(s.pending.front());
                if (e != nullptr && !e->saturated) break;
                s.pending.erase(s.pending.begin());
            }
            if (s.pending.empty()) {
                enter(s, Phase::CrossLinking);
                continue;
            }
            s.prompt = make_prompt(s);
            return;
        case Phase::CrossLinking:
            while (!s.pending.empty() && m.find_node(s.pending.front()) == nullptr) s.pending.erase(s.pending.begin());
            if (s.pending.empty()) {
                enter(s, Phase::Review);
                continue;
            }
            s.prompt = make_prompt(s);
            return;
        case Phase::Review:
            if (!s.confirmed) s.prompt = make_prompt(s);
            return;
        case Phase::Done: return;
        }
    }
}

Prompt ElicitationSession::make_prompt(State& s) const {
    Prompt p;
    p.id = "p" + std::to_string(++s.prompt_counter);
    p.phase = s.phase;
    const auto& m = s.map;
    switch (s.phase) {
    case Phase::Naming:
        p.question = std::string(kNamingQuestion);
        p.shape = AnswerShape::Text;
        break;
    case Phase::Customers:
        p.question = std::string(kCustomersQuestion);
        p.shape = AnswerShape::TextList;
        if (const auto* prod = m.product()) p.subjects = {prod->id};
        break;
    case Phase::Aspects: {
        const auto* c = m.find_node(s.pending.front());
        p.question = "For the customer " + in_quotes(c->label) +
                     ", what are the aspects the actor expects to improve using the solution?";
        p.shape = AnswerShape::TextList;
        p.subjects = {c->id};
        p.context = {{"customer", c->label}, {"existing_concepts", concept_labels(m)}};
        break;
    }
    case Phase::Features:
        if (!s.list_answered) {
            p.question = "Which are the solution features envisioned?";
            p.shape = AnswerShape::TextList;
            if (const auto* prod = m.product()) p.subjects = {prod->id};
        } else {
            const auto* f = m.find_node(s.pending.front());
            p.question = "Which aspects identified in the previous step does the feature " + in_quotes(f->label) +
                         " help fulfill, and does it increase (+), decrease (-) or not affect (o) each one?";
            p.shape = AnswerShape::EdgeAnnotation;
            p.subjects = {f->id};
            p.context = {{"feature", f->label}, {"candidates", concept_labels(m)}};
        }
        break;
    case Phase::Deepening: {
        const auto* e = m.find_edge(s.pending.front());
        const auto statement = hypothesis_text(m, *e);
        p.question = "Consider the relationship: " + statement +
                     ". Ask how? and why? Is there a concept that explains it? Saturation check: " +
                     std::string(kSaturationProbe);
        p.shape = AnswerShape::EdgeAnnotation;
        p.subjects = {e->id, e->src, e->dst};
        p.context = {{"statement", statement},
                     {"src", m.find_node(e->src)->label},
                     {"dst", m.find_node(e->dst)->label},
                     {"kind", to_string(e->kind)},
                     {"sign", e->sign ? json(symbol(*e->sign)) : json()}};
        break;
    }
    case Phase::CrossLinking: {
        const auto* c = m.find_node(s.pending.front());
        p.question = "Is the new concept " + in_quotes(c->label) + " related to other concepts already present on the map?";
        p.shape = AnswerShape::NodeChoice;
        p.subjects = {c->id};
        p.context = {{"concept", c->label}, {"candidates", concept_labels(m, c->id)}};
        break;
    }
    case Phase::Review:
        p.question = "Is the map coherent with your understanding of the customer and market? "
                     "Add, remove, or substitute elements, or answer yes when it is finished.";
        p.shape = AnswerShape::YesNo;
        break;
    case Phase::Done: break;
    }
    return p;
}

std::vector<Delta> ElicitationSession::answer(std::string_view prompt_id, const json& payload) {
    return apply(prompt_id, payload, now());
}

std::vector<Delta> ElicitationSession::apply(std::string_view prompt_id, const json& payload, std::string timestamp) {
    if (done()) throw Error(ErrorCode::SessionDone, "the session is finished");
    if (!state_.prompt || state_.prompt->id != prompt_id) {
        const std::string current = state_.prompt ? state_.prompt->id : std::string("none");
        throw Error(ErrorCode::StalePrompt,
                    "prompt \"" + std::string(prompt_id) + "\" is not the current prompt (" + current + ")",
                    {std::string(prompt_id)}, std::string(prompt_id));
    }
    State next = state_;
    const Prompt prompt = *state_.prompt;
    try {
        handle(next, prompt, payload);
    } catch (const Error& e) {
        if (!e.location().empty()) throw;
        throw Error(e.code(), e.what(), e.subjects(), prompt.id);
    }
    if (next.map.nodes().size() > node_budget_)
        throw Error(ErrorCode::NodeBudgetExceeded,
                    "the answer would grow the map past the node budget of " + std::to_string(node_budget_), {},
                    prompt.id);
    settle(next);
    auto deltas = diff_maps(state_.map, next.map);
    state_ = std::move(next);
    events_.push_back({{"event", "answer"},
                       {"seq", events_.size()},
                       {"timestamp", std::move(timestamp)},
                       {"prompt_id", prompt.id},
                       {"phase", to_string(prompt.phase)},
                       {"payload", payload}});
    return deltas;
}

void ElicitationSession::handle(State& s, const Prompt& p, const json& payload) const {
    auto& m = s.map;
    const auto& pid = p.id;
    if (is_skip(payload)) {
        switch (p.phase) {
        case Phase::Naming:
        case Phase::Review: shape_error(pid, "this prompt cannot be skipped");
        case Phase::Customers: enter(s, Phase::Aspects); return;
        case Phase::Aspects: enter(s, Phase::Features); return;
        case Phase::Features: enter(s, Phase::Deepening); return;
        case Phase::Deepening: enter(s, Phase::CrossLinking); return;
        case Phase::CrossLinking: enter(s, Phase::Review); return;
        case Phase::Done: return;
        }
    }

    switch (p.phase) {
    case Phase::Naming: {
        const auto name = text_of(payload, pid, "the product name");
        m.add_node(NodeKind::Product, name);
        m.set_title(trim(name));
        enter(s, Phase::Customers);
        return;
    }
    case Phase::Customers: {
        for (const auto& item : list_of(payload, pid)) m.add_node(NodeKind::Customer, text_of(item, pid, "a customer"));
        enter(s, Phase::Aspects);
        return;
    }
    case Phase::Aspects: {
        const auto customer = s.pending.front();
        for (const auto& item : list_of(payload, pid)) {
            std::string label;
            ProblemVerb verb = ProblemVerb::Has;
            if (item.is_object()) {
                label = text_of(item.value("label", json()), pid, "an aspect label");
                if (item.contains("verb")) {
                    auto v = parse_problem_verb(text_of(item["verb"], pid, "a verb"));
                    if (!v) shape_error(pid, "verb must be \"has\" or \"would like to\"");
                    verb = *v;
                }
            } else {
                label = text_of(item, pid, "an aspect");
            }
            const auto* existing = m.find_by_label(NodeKind::Concept, label);
            const auto concept_id = existing ? existing->id : m.add_node(NodeKind::Concept, label);
            m.add_edge(customer, concept_id, std::nullopt, verb);
        }
        s.pending.erase(s.pending.begin());
        return;
    }
    case Phase::Features: {
        if (!s.list_answered) {
            const auto product = m.product()->id;
            for (const auto& item : list_of(payload, pid)) {
                const auto fid = m.add_node(NodeKind::Feature, text_of(item, pid, "a feature"));
                m.add_edge(product, fid);
                s.pending.push_back(fid);
            }
            s.list_answered = true;
            return;
        }
        const auto feature = s.pending.front();
        for (const auto& link : list_of(payload, pid)) {
            if (!link.is_object() || !link.contains("target")) shape_error(pid, "expected {\"target\", \"sign\"}");
            const auto target = resolve(m, link["target"], {NodeKind::Concept}, pid);
            m.add_edge(feature, target, sign_of(link.value("sign", json()), pid, false));
        }
        s.pending.erase(s.pending.begin());
        return;
    }
    case Phase::Deepening: {
        const auto edge_id = s.pending.front();
        const bool saturate = payload == "saturated" ||
                              (payload.is_object() && payload.contains("saturated") && payload["saturated"] == true);
        if (saturate) {
            m.set_saturated(edge_id, true);
            s.pending.erase(s.pending.begin());
            return;
        }
        if (!payload.is_object() || !payload.contains("intermediate"))
            shape_error(pid, "expected \"saturated\" or {\"intermediate\", \"signs\"}");
        const auto label = text_of(payload["intermediate"], pid, "the intermediate concept");
        const auto signs = payload.value("signs", json::array({nullptr, nullptr}));
        if (!signs.is_array() || signs.size() != 2) shape_error(pid, "signs must be a list of two entries");
        const MapEdge original = *m.find_edge(edge_id);
        const auto src_kind = m.find_node(original.src)->kind;
        const bool below_customer = src_kind == NodeKind::Customer;
        if (below_customer && !signs[0].is_null())
            throw Error(ErrorCode::UnexpectedSign, "the link from a customer carries no sign", {original.src}, pid);
        const auto s1 = sign_of(signs[0], pid, below_customer);
        const auto s2 = sign_of(signs[1], pid, false);
        m.remove_element(edge_id);
        const auto x = m.add_node(NodeKind::Concept, label);
        const auto first = m.add_edge(original.src, x, s1, original.verb);
        const auto second = m.add_edge(x, original.dst, s2);
        s.pending.erase(s.pending.begin());
        s.pending.push_back(first);
        s.pending.push_back(second);
        s.added_concepts.push_back(x);
        return;
    }
    case Phase::CrossLinking: {
        const auto concept_id = s.pending.front();
        for (const auto& link : list_of(payload, pid)) {
            if (!link.is_object() || !link.contains("target")) shape_error(pid, "expected {\"target\", \"sign\"}");
            const auto direction = link.value("direction", std::string("out"));
            if (direction == "out") {
                const auto target = resolve(m, link["target"], {NodeKind::Concept}, pid);
                m.add_edge(concept_id, target, sign_of(link.value("sign", json()), pid, false));
            } else if (direction == "in") {
                const auto source = resolve(m, link["target"], {NodeKind::Concept, NodeKind::Feature}, pid);
                m.add_edge(source, concept_id, sign_of(link.value("sign", json()), pid, false));
            } else {
                shape_error(pid, "direction must be \"out\" or \"in\"");
            }
        }
        s.pending.erase(s.pending.begin());
        return;
    }
    case Phase::Review: handle_review(s, payload); return;
    case Phase::Done: return;
    }
}

void ElicitationSession::handle_review(State& s, const json& payload) const {
    if (payload.is_boolean()) {
        if (payload.get<bool>()) {
            s.confirmed = true;
        } else {
            enter(s, Phase::Deepening);
        }
        return;
    }
    if (payload.is_object()) {
        handle_command(s, payload);
    } else if (payload.is_array()) {
        for (const auto& c : payload) handle_command(s, c);
    } else {
        shape_error(s.prompt ? s.prompt->id : "", "expected true, false or a review command");
    }
    s.confirmed = false;
}

void ElicitationSession::handle_command(State& s, const json& c) const {
    auto& m = s.map;
    const std::string pid = s.prompt ? s.prompt->id : std::string();
    if (!c.is_object() || !c.contains("command")) shape_error(pid, "a review command needs a \"command\" field");
    const auto command = text_of(c["command"], pid, "the command");
    const std::initializer_list<NodeKind> any = {NodeKind::Product, NodeKind::Customer, NodeKind::Feature,
                                                     NodeKind::Concept};
    if (command == "add") {
        const auto kind = parse_node_kind(text_of(c.value("kind", json()), pid, "the node kind"));
        if (!kind) shape_error(pid, "kind must be product, customer, feature or concept");
        m.add_node(*kind, text_of(c.value("label", json()), pid, "the label"));
    } else if (command == "add_edge") {
        const auto src = resolve(m, c.value("src", json()), any, pid);
        const auto dst = resolve(m, c.value("dst", json()), any, pid);
        ProblemVerb verb = ProblemVerb::Has;
        if (c.contains("verb")) {
            auto v = parse_problem_verb(text_of(c["verb"], pid, "a verb"));
            if (!v) shape_error(pid, "verb must be \"has\" or \"would like to\"");
            verb = *v;
        }
        std::optional<Sign> sign;
        if (c.contains("sign") && !c["sign"].is_null()) sign = sign_of(c["sign"], pid, false);
        m.add_edge(src, dst, sign, verb);
    } else if (command == "remove") {
        if (c.contains("src") && c.contains("dst")) {
            const auto src = resolve(m, c["src"], any, pid);
            const auto dst = resolve(m, c["dst"], any, pid);
            const auto* e = m.find_edge_between(src, dst);
            if (e == nullptr) throw Error(ErrorCode::UnknownId, "no edge between those nodes", {src, dst}, pid);
            m.remove_element(e->id);
        } else {
            const auto& ref = c.value("id", json());
            if (ref.is_string() && m.find_edge(ref.get<std::string>()) != nullptr) {
                m.remove_element(ref.get<std::string>());
            } else {
                m.remove_element(resolve(m, ref, any, pid));
            }
        }
    } else if (command == "substitute") {
        const auto id = resolve(m, c.value("id", json()), any, pid);
        m.substitute_node(id, text_of(c.value("label", json()), pid, "the new label"));
    } else {
        shape_error(pid, "unknown review command \"" + command + "\"");
    }
}

FinishResult ElicitationSession::finish() {
    if (done()) throw Error(ErrorCode::SessionDone, "the session is finished");
    if (state_.phase != Phase::Review || !state_.confirmed)
        throw Error(ErrorCode::PhaseError, "finish needs the review phase with a confirmed map (current phase: " +
                                               std::string(to_string(state_.phase)) + ")");
    const auto diagnostics = validate(state_.map);
    if (has_errors(diagnostics)) throw Error(ErrorCode::InvalidMap, "the map has validation errors");
    FinishResult result{state_.map, generate(state_.map), {}};
    for (const auto& e : state_.map.edges()) {
        if (is_deepenable(e) && !e.saturated) result.unsaturated_edges.push_back(e.id);
    }
    state_.phase = Phase::Done;
    state_.prompt.reset();
    events_.push_back({{"event", "finish"}, {"seq", events_.size()}, {"timestamp", now()}});
    return result;
}

std::string ElicitationSession::log_jsonl() const {
    std::string out;
    for (const auto& e : events_) out += e.dump() + "\n";
    return out;
}

ElicitationSession ElicitationSession::replay(std::string_view jsonl) {
    std::istringstream in{std::string(jsonl)};
    std::string line;
    std::size_t line_no = 0;
    std::optional<ElicitationSession> session;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto where = "line " + std::to_string(line_no);
        json event;
        try {
            event = json::parse(line);
        } catch (const json::parse_error& e) {
            throw Error(ErrorCode::SchemaViolation, where + ": " + e.what(), {}, where);
        }
        if (!event.is_object() || !event.contains("event") || !event["event"].is_string())
            throw Error(ErrorCode::SchemaViolation, where + ": missing \"event\"", {}, where);
        const auto kind = event["event"].get<std::string>();
        if (!session) {
            if (kind != "start") throw Error(ErrorCode::SchemaViolation, where + ": log must begin with a start event", {}, where);
            session.emplace(event.value("session", std::string("session")), event.value("title", std::string()),
                            event.value("node_budget", kDefaultNodeBudget));
            session->events_.front()["timestamp"] = event.value("timestamp", std::string());
            continue;
        }
        if (kind == "answer") {
            const auto pid = event.value("prompt_id", std::string());
            const auto& current = session->current_prompt();
            if (!current || current->id != pid)
                throw Error(ErrorCode::ReplayDivergence,
                            where + ": recorded prompt " + pid + " but the session is at " +
                                (current ? current->id : std::string("no prompt")),
                            {pid}, where);
            try {
                session->apply(pid, event.value("payload", json()), event.value("timestamp", std::string()));
            } catch (const Error& e) {
                throw Error(ErrorCode::ReplayDivergence, where + ": " + e.what(), e.subjects(), where);
            }
        } else if (kind == "finish") {
            try {
                session->finish();
            } catch (const Error& e) {
                throw Error(ErrorCode::ReplayDivergence, where + ": " + e.what(), e.subjects(), where);
            }
            session->events_.back()["timestamp"] = event.value("timestamp", std::string());
        } else {
            throw Error(ErrorCode::SchemaViolation, where + ": unknown event \"" + kind + "\"", {}, where);
        }
    }
    if (!session) throw Error(ErrorCode::SchemaViolation, "empty session log");
    return std::move(*session);
}

}  // namespace hymap
