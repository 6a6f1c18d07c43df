// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "hymap/service.hpp"

#include "hymap/analysis.hpp"
#include "hymap/dsl.hpp"
#include "hymap/error.hpp"
#include "hymap/json_io.hpp"
#include "hymap/render.hpp"
#include "hymap/validation.hpp"

#include <httplib.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace hymap::service {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct HttpError {
    int status;
    std::string code;
    std::string message;
};

json error_body(std::string_view code, const std::string& message, const std::vector<std::string>& subjects = {},
                const std::string& location = {}) {
    return {{"error", {{"code", code}, {"message", message}, {"subjects", subjects}, {"location", location}}}};
}

Response from_error(const Error& e) {
    return {status_for(e.code()), error_body(to_string(e.code()), e.what(), e.subjects(), e.location())};
}

[[noreturn]] void not_found(const std::string& what) { throw HttpError{404, "UnknownId", what + " not found"}; }

std::vector<std::string> split_path(std::string_view path) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < path.size()) {
        while (i < path.size() && path[i] == '/') ++i;
        const auto j = path.find('/', i);
        const auto end = j == std::string_view::npos ? path.size() : j;
        if (end > i) out.emplace_back(path.substr(i, end - i));
        i = end;
    }
    return out;
}

json parse_body(const std::string& body) {
    if (body.empty()) return json::object();
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("request body is not JSON: ") + e.what());
    }
}

bool truthy(const std::map<std::string, std::string>& query, const std::string& key) {
    auto it = query.find(key);
    return it != query.end() && (it->second == "1" || it->second == "true" || it->second.empty());
}

/// Parses {dsl} or {map} into a map. DSL failures become a 400 with the
/// parse diagnostics attached.
struct ParsedMap {
    CognitiveMap map;
    json warnings = json::array();
};

ParsedMap map_from_body(const json& body) {
    if (body.contains("dsl")) {
        if (!body["dsl"].is_string()) throw Error(ErrorCode::ShapeMismatch, "\"dsl\" must be a string", {}, "/dsl");
        auto result = dsl::parse(body["dsl"].get<std::string>());
        if (!result.ok()) {
            auto out = error_body(to_string(ErrorCode::ParseError),
                                  result.errors.empty() ? "parse failed" : result.errors.front().message);
            out["error"]["diagnostics"] = dsl::diagnostics_to_json(result.errors);
            throw Response{400, out};
        }
        return {std::move(*result.map), dsl::diagnostics_to_json(result.warnings)};
    }
    if (body.contains("map")) return {map_from_json(body["map"]), json::array()};
    throw Error(ErrorCode::ShapeMismatch, "expected {\"dsl\": ...} or {\"map\": ...}");
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    const auto tmp = fs::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int status_for(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::Unauthorized: return 401;
    case ErrorCode::UnknownHypothesis: return 404;
    case ErrorCode::StalePrompt:
    case ErrorCode::PhaseError:
    case ErrorCode::SessionDone:
    case ErrorCode::AmbiguousHypothesis: return 409;
    case ErrorCode::SessionExpired: return 410;
    case ErrorCode::IoError: return 500;
    default: return 400;
    }
}

ServiceConfig ServiceConfig::from_env() {
    ServiceConfig c;
    if (const char* v = std::getenv("HYMAP_HOST")) c.host = v;
    if (const char* v = std::getenv("HYMAP_PORT")) c.port = std::atoi(v);
    if (const char* v = std::getenv("HYMAP_STORAGE")) c.storage_dir = v;
    if (const char* v = std::getenv("HYMAP_CORS")) {
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!item.empty()) c.cors_allowlist.push_back(item);
        }
    }
    return c;
}

Service::Service(ServiceConfig config) : config_(std::move(config)), rng_(std::random_device{}()) {
    if (!config_.clock) config_.clock = [] { return std::chrono::system_clock::now(); };
    if (!config_.storage_dir.empty()) load_storage();
}

Service::~Service() = default;

std::chrono::system_clock::time_point Service::now() const { return config_.clock(); }

bool Service::origin_allowed(std::string_view origin) const {
    for (const auto& o : config_.cors_allowlist) {
        if (o == "*" || o == origin) return true;
    }
    return false;
}

std::string Service::random_hex(std::size_t bytes) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (std::size_t i = 0; i < bytes; ++i) {
        const auto b = static_cast<unsigned>(rng_() & 0xffu);
        out.push_back(kHex[b >> 4]);
        out.push_back(kHex[b & 0xfu]);
    }
    return out;
}

Response Service::handle(const Request& request) {
    try {
        return route(request);
    } catch (const Response& r) {
        return r;
    } catch (const HttpError& e) {
        return {e.status, error_body(e.code, e.message)};
    } catch (const Error& e) {
        return from_error(e);
    } catch (const std::exception& e) {
        return {500, error_body("Internal", e.what())};
    }
}

Response Service::route(const Request& r) {
    const auto seg = split_path(r.path);
    const auto& m = r.method;
    if (seg.size() == 1 && seg[0] == "health" && m == "GET") return {200, {{"status", "ok"}}};
    if (!seg.empty() && seg[0] == "maps") {
        if (seg.size() == 1 && m == "POST") return create_map(parse_body(r.body));
        if (seg.size() == 2 && m == "GET") return get_map(seg[1]);
        if (seg.size() == 2 && m == "PUT") return put_map(seg[1], parse_body(r.body));
        if (seg.size() == 3 && m == "GET") return map_view(seg[1], seg[2], r);
    }
    if (seg.size() == 3 && seg[0] == "hypotheses" && seg[2] == "assessment" && m == "POST")
        return assess(seg[1], parse_body(r.body));
    if (!seg.empty() && seg[0] == "sessions") {
        if (seg.size() == 1 && m == "POST") return create_session(parse_body(r.body));
        if (seg.size() == 3) return session_op(seg[1], seg[2], r);
    }
    throw HttpError{404, "NotFound", "no route for " + m + " " + r.path};
}

std::shared_ptr<Service::MapEntry> Service::find_map(const std::string& id) {
    std::lock_guard lock(registry_mutex_);
    auto it = maps_.find(id);
    if (it == maps_.end()) not_found("map \"" + id + "\"");
    return it->second;
}

std::string Service::store_map(CognitiveMap map, std::vector<Hypothesis> hypotheses) {
    auto entry = std::make_shared<MapEntry>();
    std::string id;
    {
        std::lock_guard lock(registry_mutex_);
        do {
            id = "map-" + std::to_string(++map_counter_);
        } while (maps_.count(id) != 0);
        map.set_id(id);
        entry->map = std::move(map);
        entry->registry = Registry(hypotheses);
        entry->hypotheses = std::move(hypotheses);
        maps_.emplace(id, entry);
    }
    std::lock_guard lock(entry->mutex);
    persist_map(id, *entry);
    return id;
}

void Service::persist_map(const std::string& id, const MapEntry& entry) const {
    if (config_.storage_dir.empty()) return;
    const auto dir = config_.storage_dir / "maps";
    json doc{{"map", map_to_json(entry.map)}, {"hypotheses", hypotheses_to_json(entry.hypotheses)}};
    write_file(dir / (id + ".json"), doc.dump(2) + "\n");
    entry.registry.save(dir / (id + ".assessments.json"));
}

void Service::persist_session(const std::string& id, const SessionEntry& entry) const {
    if (config_.storage_dir.empty()) return;
    const auto dir = config_.storage_dir / "sessions";
    write_file(dir / (id + ".log.jsonl"), entry.session->log_jsonl());
    const auto expires = format_timestamp(entry.expires_at);
    write_file(dir / (id + ".session.json"),
               json{{"token", entry.token}, {"expires_at", expires}, {"finish", entry.finish_response}}.dump(2) + "\n");
}

void Service::load_storage() {
    const auto maps_dir = config_.storage_dir / "maps";
    if (fs::is_directory(maps_dir)) {
        for (const auto& f : fs::directory_iterator(maps_dir)) {
            const auto name = f.path().filename().string();
            if (f.path().extension() != ".json" || name.find(".assessments.") != std::string::npos) continue;
            const auto doc = json::parse(read_file(f.path()));
            auto entry = std::make_shared<MapEntry>();
            entry->map = map_from_json(doc.at("map"));
            entry->hypotheses = hypotheses_from_json(doc.at("hypotheses"));
            const auto reg_path = maps_dir / (entry->map.id() + ".assessments.json");
            entry->registry = fs::exists(reg_path) ? Registry::load(reg_path, entry->hypotheses)
                                                   : Registry(entry->hypotheses);
            const auto& id = entry->map.id();
            if (id.rfind("map-", 0) == 0) {
                map_counter_ = std::max<std::size_t>(map_counter_, std::strtoull(id.c_str() + 4, nullptr, 10));
            }
            maps_.emplace(id, std::move(entry));
        }
    }
    const auto sessions_dir = config_.storage_dir / "sessions";
    if (fs::is_directory(sessions_dir)) {
        for (const auto& f : fs::directory_iterator(sessions_dir)) {
            const auto name = f.path().filename().string();
            const std::string suffix = ".session.json";
            if (name.size() <= suffix.size() || name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0)
                continue;
            const auto id = name.substr(0, name.size() - suffix.size());
            const auto meta = json::parse(read_file(f.path()));
            auto entry = std::make_shared<SessionEntry>();
            entry->session = std::make_unique<ElicitationSession>(
                ElicitationSession::replay(read_file(sessions_dir / (id + ".log.jsonl"))));
            entry->token = meta.at("token").get<std::string>();
            entry->expires_at = parse_timestamp(meta.at("expires_at").get<std::string>()).value_or(now());
            entry->finish_response = meta.value("finish", json());
            sessions_.emplace(id, std::move(entry));
        }
    }
}

Response Service::create_map(const json& body) {
    auto parsed = map_from_body(body);
    auto hyps = has_errors(validate(parsed.map)) ? std::vector<Hypothesis>{} : generate(parsed.map);
    const auto id = store_map(std::move(parsed.map), std::move(hyps));
    auto entry = find_map(id);
    std::lock_guard lock(entry->mutex);
    return {201,
            {{"id", id},
             {"map", map_to_json(entry->map)},
             {"warnings", parsed.warnings},
             {"diagnostics", diagnostics_to_json(validate(entry->map))}}};
}

Response Service::put_map(const std::string& id, const json& body) {
    auto entry = find_map(id);
    auto parsed = map_from_body(body);
    parsed.map.set_id(id);
    std::lock_guard lock(entry->mutex);
    auto hyps = regenerate(parsed.map, entry->hypotheses);
    // Assessments of hypotheses that no longer exist are dropped.
    auto reg_doc = entry->registry.to_json();
    json kept = json::array();
    std::set<std::string> ids;
    for (const auto& h : hyps) ids.insert(h.id);
    for (const auto& item : reg_doc["assessments"]) {
        if (ids.count(item["hypothesis_id"].get<std::string>()) != 0) kept.push_back(item);
    }
    reg_doc["assessments"] = kept;
    entry->registry = Registry::from_json(reg_doc, hyps);
    entry->map = std::move(parsed.map);
    entry->hypotheses = std::move(hyps);
    persist_map(id, *entry);
    return {200,
            {{"id", id},
             {"map", map_to_json(entry->map)},
             {"warnings", parsed.warnings},
             {"diagnostics", diagnostics_to_json(validate(entry->map))}}};
}

Response Service::get_map(const std::string& id) {
    auto entry = find_map(id);
    std::lock_guard lock(entry->mutex);
    return {200, {{"id", id}, {"map", map_to_json(entry->map)}, {"dsl", dsl::serialize(entry->map)}}};
}

Response Service::map_view(const std::string& id, const std::string& view, const Request& r) {
    auto entry = find_map(id);
    std::lock_guard lock(entry->mutex);
    const auto& map = entry->map;
    if (view == "diagnostics") {
        return {200,
                {{"map_id", id},
                 {"diagnostics", diagnostics_to_json(validate(map))},
                 {"report", report_to_json(structure_report(map))}}};
    }
    if (view == "layout") {
        render::RenderOptions options;
        if (auto it = r.query.find("orientation"); it != r.query.end() && it->second == "product-bottom")
            options.orientation = render::Orientation::ProductBottom;
        return {200, render::layout_json(map, options)};
    }
    if (view == "render") {
        render::RenderOptions options;
        const auto it = r.query.find("format");
        const auto format = render::parse_format(it == r.query.end() ? "dot" : it->second);
        if (!format) throw Error(ErrorCode::ShapeMismatch, "format must be dot, svg or layout");
        options.format = *format;
        return {200, {{"format", it == r.query.end() ? "dot" : it->second}, {"content", render::render(map, options)}}};
    }
    if (view == "hypotheses") {
        const auto index = entry->registry.current_index();
        const auto list = truthy(r.query, "prioritized") ? prioritize(entry->hypotheses, index) : entry->hypotheses;
        return {200, {{"map_id", id}, {"hypotheses", hypotheses_to_json(list, index)}}};
    }
    if (view == "summary") {
        const bool fold = !(r.query.count("refuted") != 0 && r.query.at("refuted") == "separate");
        const auto table = summarize(entry->registry, entry->hypotheses, fold);
        return {200, {{"map_id", id}, {"summary", summary_to_json(table)}, {"markdown", summary_to_markdown(table)}}};
    }
    if (view == "assessments") return {200, entry->registry.to_json()};
    not_found("view \"" + view + "\"");
}

Response Service::assess(const std::string& hypothesis_id, const json& body) {
    std::vector<std::pair<std::string, std::shared_ptr<MapEntry>>> candidates;
    if (body.contains("map_id")) {
        if (!body["map_id"].is_string()) throw Error(ErrorCode::ShapeMismatch, "map_id must be a string", {}, "/map_id");
        const auto map_id = body["map_id"].get<std::string>();
        candidates.emplace_back(map_id, find_map(map_id));
    } else {
        std::vector<std::pair<std::string, std::shared_ptr<MapEntry>>> all;
        {
            std::lock_guard lock(registry_mutex_);
            all.assign(maps_.begin(), maps_.end());
        }
        for (auto& [mid, entry] : all) {
            std::lock_guard lock(entry->mutex);
            if (entry->registry.knows(hypothesis_id)) candidates.emplace_back(mid, entry);
        }
        if (candidates.empty())
            throw Error(ErrorCode::UnknownHypothesis, "no hypothesis with id \"" + hypothesis_id + "\"", {hypothesis_id});
        if (candidates.size() > 1) {
            std::vector<std::string> ids;
            for (const auto& c : candidates) ids.push_back(c.first);
            throw Error(ErrorCode::AmbiguousHypothesis,
                        "hypothesis \"" + hypothesis_id + "\" exists in several maps; pass map_id", ids);
        }
    }

    const auto status = parse_status(body.value("status", std::string()));
    if (!status) throw Error(ErrorCode::ShapeMismatch, "status must be validated, not-validated, refuted or unassessed", {}, "/status");
    std::optional<RiskLevel> risk;
    if (body.contains("risk") && !body["risk"].is_null()) {
        if (!body["risk"].is_string()) throw Error(ErrorCode::ShapeMismatch, "risk must be L, M or H", {}, "/risk");
        risk = parse_risk(body["risk"].get<std::string>());
        if (!risk) throw Error(ErrorCode::ShapeMismatch, "risk must be L, M or H", {}, "/risk");
    }
    std::vector<Evidence> evidence;
    if (body.contains("evidence")) {
        if (!body["evidence"].is_array()) throw Error(ErrorCode::ShapeMismatch, "evidence must be a list", {}, "/evidence");
        for (std::size_t i = 0; i < body["evidence"].size(); ++i) {
            const auto& e = body["evidence"][i];
            const auto where = "/evidence/" + std::to_string(i);
            if (!e.is_object() || !e.contains("source") || !e["source"].is_string())
                throw Error(ErrorCode::ShapeMismatch, "evidence entries need a source", {}, where);
            const auto source = parse_evidence_source(e["source"].get<std::string>());
            if (!source) throw Error(ErrorCode::ShapeMismatch, "unknown evidence source", {}, where + "/source");
            evidence.push_back({*source, e.value("note", std::string()), e.value("date", std::string())});
        }
    }

    auto& [map_id, entry] = candidates.front();
    std::lock_guard lock(entry->mutex);
    entry->registry.assess(hypothesis_id, *status, risk, std::move(evidence),
                           body.value("recorded_at", format_timestamp(now())));
    persist_map(map_id, *entry);
    return {200,
            {{"map_id", map_id},
             {"hypothesis_id", hypothesis_id},
             {"assessment", assessment_to_json(*entry->registry.current(hypothesis_id))},
             {"history_length", entry->registry.history(hypothesis_id).size()}}};
}

Response Service::create_session(const json& body) {
    const auto title = body.value("title", std::string());
    const auto budget = body.value("node_budget", ElicitationSession::kDefaultNodeBudget);
    auto entry = std::make_shared<SessionEntry>();
    std::string id;
    {
        std::lock_guard lock(registry_mutex_);
        do {
            id = "s-" + random_hex(8);
        } while (sessions_.count(id) != 0);
        entry->token = random_hex(16);
        sessions_.emplace(id, entry);
    }
    std::lock_guard lock(entry->mutex);
    entry->session = std::make_unique<ElicitationSession>(id, title, budget);
    entry->session->set_clock(config_.clock);
    entry->expires_at = now() + config_.session_ttl;
    persist_session(id, *entry);
    const auto& prompt = entry->session->current_prompt();
    return {201,
            {{"session_id", id},
             {"token", entry->token},
             {"phase", to_string(entry->session->phase())},
             {"expires_at", format_timestamp(entry->expires_at)},
             {"prompt", prompt ? prompt_to_json(*prompt) : json()}}};
}

json Service::finish_body(const std::string& map_id, const FinishResult& result) const {
    return {{"map_id", map_id},
            {"map", map_to_json(result.map)},
            {"hypotheses", hypotheses_to_json(result.hypotheses)},
            {"warnings", {{"unsaturated_edges", result.unsaturated_edges}}}};
}

Response Service::session_op(const std::string& id, const std::string& op, const Request& r) {
    std::shared_ptr<SessionEntry> entry;
    {
        std::lock_guard lock(registry_mutex_);
        auto it = sessions_.find(id);
        if (it == sessions_.end()) not_found("session \"" + id + "\"");
        entry = it->second;
    }
    std::lock_guard lock(entry->mutex);
    if (r.authorization != "Bearer " + entry->token)
        throw Error(ErrorCode::Unauthorized, "missing or wrong bearer token for session \"" + id + "\"", {id});
    if (now() > entry->expires_at)
        throw Error(ErrorCode::SessionExpired, "session \"" + id + "\" has expired", {id});
    auto& session = *entry->session;

    if (op == "prompt" && r.method == "GET") {
        const auto& prompt = session.current_prompt();
        return {200,
                {{"session_id", id},
                 {"phase", to_string(session.phase())},
                 {"ready", session.confirmed() && !session.done()},
                 {"prompt", prompt ? prompt_to_json(*prompt) : json()}}};
    }
    if (op == "log" && r.method == "GET") return {200, {{"session_id", id}, {"log", session.log_jsonl()}}};
    if (op == "map" && r.method == "GET")
        return {200, {{"session_id", id}, {"map", map_to_json(session.map())}, {"layout", render::layout_json(session.map())}}};
    if (op == "answer" && r.method == "POST") {
        const auto body = parse_body(r.body);
        if (!body.contains("prompt_id") || !body["prompt_id"].is_string())
            throw Error(ErrorCode::ShapeMismatch, "prompt_id is required", {}, "/prompt_id");
        const auto prompt_id = body["prompt_id"].get<std::string>();
        const auto payload = body.value("payload", json());
        if (prompt_id == entry->last_prompt_id && payload == entry->last_payload) return {200, entry->last_response};
        const auto deltas = session.answer(prompt_id, payload);
        const auto& prompt = session.current_prompt();
        json response{{"session_id", id},
                      {"deltas", deltas_to_json(deltas)},
                      {"phase", to_string(session.phase())},
                      {"ready", session.confirmed()},
                      {"prompt", prompt ? prompt_to_json(*prompt) : json()}};
        entry->last_prompt_id = prompt_id;
        entry->last_payload = payload;
        entry->last_response = response;
        entry->expires_at = now() + config_.session_ttl;
        persist_session(id, *entry);
        return {200, response};
    }
    if (op == "finish" && r.method == "POST") {
        if (session.done() && !entry->finish_response.is_null()) return {200, entry->finish_response};
        auto result = session.finish();
        const auto map_id = store_map(result.map, result.hypotheses);
        entry->finish_response = finish_body(map_id, result);
        persist_session(id, *entry);
        return {200, entry->finish_response};
    }
    throw HttpError{404, "NotFound", "no route for " + r.method + " " + r.path};
}

struct HttpServer::Impl {
    Service& service;
    httplib::Server server;

    explicit Impl(Service& s) : service(s) {
        auto handler = [this](const httplib::Request& req, httplib::Response& res) {
            Request request;
            request.method = req.method;
            request.path = req.path;
            for (const auto& [k, v] : req.params) request.query[k] = v;
            request.body = req.body;
            request.authorization = req.get_header_value("Authorization");
            const auto response = service.handle(request);
            res.status = response.status;
            res.set_content(response.body.dump(), "application/json");
        };
        server.Get(".*", handler);
        server.Post(".*", handler);
        server.Put(".*", handler);
        server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
        server.set_post_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
            const auto origin = req.get_header_value("Origin");
            if (origin.empty() || !service.origin_allowed(origin)) return;
            res.set_header("Access-Control-Allow-Origin", origin);
            res.set_header("Vary", "Origin");
            res.set_header("Access-Control-Allow-Headers", "Authorization, Content-Type");
            res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS");
        });
    }
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {}
HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }
void HttpServer::stop() {
    if (impl_->server.is_running()) impl_->server.stop();
}
void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace hymap::service
