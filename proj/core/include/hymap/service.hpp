// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#pragma once

#include "hymap/elicitation.hpp"
#include "hymap/error.hpp"
#include "hymap/hypotheses.hpp"
#include "hymap/model.hpp"
#include "hymap/registry.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

namespace hymap::service {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    /// Maps, assessments and session logs are persisted here when set.
    std::filesystem::path storage_dir;
    /// Origins allowed by CORS; "*" allows any.
    std::vector<std::string> cors_allowlist;
    std::chrono::seconds session_ttl = std::chrono::hours(24);
    std::function<std::chrono::system_clock::time_point()> clock;

    /// HYMAP_PORT, HYMAP_HOST, HYMAP_STORAGE, HYMAP_CORS (comma separated).
    static ServiceConfig from_env();
};

struct Request {
    std::string method;
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
    /// Value of the Authorization header.
    std::string authorization;
};

struct Response {
    int status = 200;
    nlohmann::json body;
};

/// HTTP status for an error code: 400 shape and map-rule errors, 401, 404,
/// 409 stale prompt or wrong phase, 410 expired session.
int status_for(ErrorCode code) noexcept;

/// Transport-independent request handling. Every state change goes through
/// the same core calls the CLI uses. Requests on different maps or sessions
/// run in parallel; requests on the same one are serialized.
class Service {
public:
    explicit Service(ServiceConfig config = {});
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    Response handle(const Request& request);

    const ServiceConfig& config() const noexcept { return config_; }
    bool origin_allowed(std::string_view origin) const;

private:
    struct MapEntry {
        std::mutex mutex;
        CognitiveMap map;
        std::vector<Hypothesis> hypotheses;
        Registry registry;
    };
    struct SessionEntry {
        std::mutex mutex;
        std::unique_ptr<ElicitationSession> session;
        std::string token;
        std::chrono::system_clock::time_point expires_at;
        std::string last_prompt_id;
        nlohmann::json last_payload;
        nlohmann::json last_response;
        nlohmann::json finish_response;
    };

    Response route(const Request& request);
    Response create_map(const nlohmann::json& body);
    Response put_map(const std::string& id, const nlohmann::json& body);
    Response get_map(const std::string& id);
    Response map_view(const std::string& id, const std::string& view, const Request& request);
    Response assess(const std::string& hypothesis_id, const nlohmann::json& body);
    Response create_session(const nlohmann::json& body);
    Response session_op(const std::string& id, const std::string& op, const Request& request);

    std::shared_ptr<MapEntry> find_map(const std::string& id);
    std::string store_map(CognitiveMap map, std::vector<Hypothesis> hypotheses);
    void persist_map(const std::string& id, const MapEntry& entry) const;
    void persist_session(const std::string& id, const SessionEntry& entry) const;
    void load_storage();
    std::chrono::system_clock::time_point now() const;
    std::string random_hex(std::size_t bytes);
    nlohmann::json finish_body(const std::string& map_id, const FinishResult& result) const;

    ServiceConfig config_;
    std::mutex registry_mutex_;
    std::map<std::string, std::shared_ptr<MapEntry>> maps_;
    std::map<std::string, std::shared_ptr<SessionEntry>> sessions_;
    std::size_t map_counter_ = 0;
    std::mt19937_64 rng_;
};

/// cpp-httplib front end for a Service.
class HttpServer {
public:
    explicit HttpServer(Service& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds to `port`, or any free port when 0. Returns the bound port or -1.
    int bind(const std::string& host, int port);
    /// Blocks until stop().
    bool listen_after_bind();
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace hymap::service
