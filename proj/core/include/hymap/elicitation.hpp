// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#pragma once

#include "hymap/hypotheses.hpp"
#include "hymap/model.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hymap {

enum class Phase { Naming, Customers, Aspects, Features, Deepening, CrossLinking, Review, Done };
enum class AnswerShape { Text, TextList, NodeChoice, YesNo, EdgeAnnotation };

std::string_view to_string(Phase phase) noexcept;
std::string_view to_string(AnswerShape shape) noexcept;
std::optional<Phase> parse_phase(std::string_view text) noexcept;

inline constexpr std::string_view kNamingQuestion = "What is the product/solution name?";
inline constexpr std::string_view kCustomersQuestion = "What are the customers targeted by the solution?";
inline constexpr std::string_view kSaturationProbe =
    "can you create a simple experiment to evaluate this relationship?";

struct Prompt {
    std::string id;
    Phase phase = Phase::Naming;
    std::string question;
    AnswerShape shape = AnswerShape::Text;
    /// Nodes or edges the question is about.
    std::vector<std::string> subjects;
    /// Extra data for the answering UI (candidate labels, current statement).
    nlohmann::json context = nlohmann::json::object();
};

nlohmann::json prompt_to_json(const Prompt& prompt);

enum class DeltaOp { AddNode, UpdateNode, RemoveNode, AddEdge, UpdateEdge, RemoveEdge };
std::string_view to_string(DeltaOp op) noexcept;

/// One element-level change. `element` is the node/edge after the change
/// (before it, for removals).
struct Delta {
    DeltaOp op = DeltaOp::AddNode;
    std::string id;
    nlohmann::json element;
};

/// Removals first, then updates, then additions; creation order within each.
std::vector<Delta> diff_maps(const CognitiveMap& before, const CognitiveMap& after);
nlohmann::json deltas_to_json(const std::vector<Delta>& deltas);

struct FinishResult {
    CognitiveMap map;
    std::vector<Hypothesis> hypotheses;
    /// Influence and perception edges the founder never marked saturated.
    std::vector<std::string> unsaturated_edges;
};

/// The guided question protocol as a state machine.
///
/// Payloads per prompt:
///   Naming         "NetFix"
///   Customers      ["patient", "health professional"]
///   Aspects        ["difficulty to find professionals", {"label": "...", "verb": "would like to"}]
///   Features list  ["search by sport", ...]
///   Features links [{"target": "<aspect label or id>", "sign": "+"}]
///   Deepening      "saturated" | {"saturated": true}
///                  | {"intermediate": "X", "signs": [s1, s2]}   (s1 null below a customer)
///   CrossLinking   [{"target": "Y", "sign": "+", "direction": "out" | "in"}]
///   Review         true | false | {"command": "add" | "add_edge" | "remove" | "substitute", ...}
///                  | [commands...]
/// Any prompt except Naming and Review also accepts {"skip": true}, which
/// ends the current phase.
///
/// A failing answer throws and leaves the session untouched. Successful
/// answers are appended to the log, which replays to the same map.
class ElicitationSession {
public:
    using Clock = std::chrono::system_clock;
    static constexpr std::size_t kDefaultNodeBudget = 200;

    explicit ElicitationSession(std::string id = "session", std::string title = {},
                                std::size_t node_budget = kDefaultNodeBudget);

    static ElicitationSession start(std::string title = {}, std::string id = "session",
                                    std::size_t node_budget = kDefaultNodeBudget);

    const std::string& id() const noexcept { return id_; }
    const std::string& title() const noexcept { return title_; }
    std::size_t node_budget() const noexcept { return node_budget_; }
    Phase phase() const noexcept { return state_.phase; }
    const CognitiveMap& map() const noexcept { return state_.map; }
    bool confirmed() const noexcept { return state_.confirmed; }
    bool done() const noexcept { return state_.phase == Phase::Done; }

    /// The prompt awaiting an answer. nullopt once Review is confirmed (call
    /// finish) or when done.
    const std::optional<Prompt>& current_prompt() const noexcept { return state_.prompt; }
    /// Same as current_prompt(), but throws SessionDone after finish.
    const std::optional<Prompt>& next_prompt() const;

    /// Throws SessionDone, StalePrompt, ShapeMismatch, NodeBudgetExceeded or
    /// any core-model error (location = prompt id).
    std::vector<Delta> answer(std::string_view prompt_id, const nlohmann::json& payload);

    /// Throws PhaseError unless Review is confirmed, SessionDone when already
    /// finished.
    FinishResult finish();

    /// JSON-lines: a start event, one line per accepted answer, and a finish
    /// event when finished.
    std::string log_jsonl() const;
    const std::vector<nlohmann::json>& events() const noexcept { return events_; }

    /// Rebuilds a session from a log. Throws ReplayDivergence when a recorded
    /// prompt id or answer does not fit, SchemaViolation for malformed lines.
    static ElicitationSession replay(std::string_view jsonl);

    /// Timestamps for log events. Defaults to the system clock.
    void set_clock(std::function<Clock::time_point()> clock) { clock_ = std::move(clock); }

private:
    struct State {
        CognitiveMap map;
        Phase phase = Phase::Naming;
        /// Subjects still to be asked about in the current phase.
        std::vector<std::string> pending;
        bool list_answered = false;
        std::vector<std::string> added_concepts;
        bool confirmed = false;
        std::optional<Prompt> prompt;
        std::size_t prompt_counter = 0;
    };

    std::vector<Delta> apply(std::string_view prompt_id, const nlohmann::json& payload, std::string timestamp);
    void settle(State& s) const;
    Prompt make_prompt(State& s) const;
    void enter(State& s, Phase phase) const;
    void handle(State& s, const Prompt& p, const nlohmann::json& payload) const;
    void handle_review(State& s, const nlohmann::json& payload) const;
    void handle_command(State& s, const nlohmann::json& command) const;
    std::string now() const;

    std::string id_;
    std::string title_;
    std::size_t node_budget_;
    State state_;
    std::vector<nlohmann::json> events_;
    std::function<Clock::time_point()> clock_;
};

}  // namespace hymap
