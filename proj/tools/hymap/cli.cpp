// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "cli.hpp"

#include "hymap/analysis.hpp"
#include "hymap/dsl.hpp"
#include "hymap/elicitation.hpp"
#include "hymap/error.hpp"
#include "hymap/hypotheses.hpp"
#include "hymap/json_io.hpp"
#include "hymap/registry.hpp"
#include "hymap/render.hpp"
#include "hymap/service.hpp"
#include "hymap/validation.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

namespace hymap::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Unwinds to run() with an exit code after the message was printed.
struct Exit {
    int code;
};

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << text;
}

bool is_json_path(const fs::path& path) { return path.extension() == ".json"; }

std::string paint(const CliConfig& cfg, std::string_view text, const char* code) {
    if (!cfg.color) return std::string(text);
    return std::string("\033[") + code + "m" + std::string(text) + "\033[0m";
}

void print_parse_diagnostics(const CliConfig& cfg, const fs::path& file, const std::vector<dsl::ParseDiagnostic>& ds,
                             std::string_view severity, std::ostream& os) {
    for (const auto& d : ds) {
        os << file.string() << ":" << d.line << ":" << d.column << ": "
           << paint(cfg, severity, severity == "error" ? "31" : "33") << "[" << d.code << "]: " << d.message << "\n";
        if (!d.excerpt.empty()) os << "    " << d.excerpt << "\n";
    }
}

/// Reads a .hymap (DSL) or .json map. Parse failures print diagnostics and
/// exit 2 for syntax errors, 1 for map-rule errors.
CognitiveMap load_map(const CliConfig& cfg, const fs::path& file, Io& io, bool show_warnings = false) {
    const auto text = read_text(file);
    if (is_json_path(file)) return import_json(text);
    auto result = dsl::parse(text);
    if (!result.ok()) {
        print_parse_diagnostics(cfg, file, result.errors, "error", io.err);
        throw Exit{result.has_syntax_errors() ? kParseError : kDomainError};
    }
    if (show_warnings) print_parse_diagnostics(cfg, file, result.warnings, "warning", io.out);
    return std::move(*result.map);
}

void save_map(const fs::path& file, const CognitiveMap& map) {
    write_text(file, is_json_path(file) ? export_json(map) + "\n" : dsl::serialize(map));
}

fs::path registry_path(const CliConfig& cfg) {
    return cfg.assessments ? *cfg.assessments : assessments_path_for(cfg.map_file);
}

Registry load_registry(const CliConfig& cfg, const std::vector<Hypothesis>& hyps) {
    const auto path = registry_path(cfg);
    if (!fs::exists(path)) return Registry(hyps);
    return Registry::load(path, hyps);
}

fs::path default_log_path(const fs::path& map_file) {
    auto p = map_file;
    p.replace_extension(".log.jsonl");
    return p;
}

std::string env_format(const Io& io, std::initializer_list<std::string_view> allowed) {
    const char* v = io.getenv ? io.getenv("HYMAP_FORMAT") : nullptr;
    if (v == nullptr) return {};
    for (auto a : allowed)
        if (a == v) return v;
    return {};
}

// ---- elicitation answers typed at the terminal ----------------------------

std::vector<std::string> split_items(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (item.size() >= 2 && item.front() == '"' && item.back() == '"') item = item.substr(1, item.size() - 2);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string unquote(std::string s) {
    s = trim(s);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

json sign_token(const std::string& s) {
    const auto t = trim(s);
    if (t == "_" || t == "none" || t.empty()) return nullptr;
    return t;
}

/// `label:sign`, split at the last colon.
std::pair<std::string, std::string> label_sign(const std::string& item) {
    const auto colon = item.rfind(':');
    if (colon == std::string::npos)
        throw Error(ErrorCode::ShapeMismatch, "expected <label>:<sign> in \"" + item + "\"");
    return {unquote(item.substr(0, colon)), trim(item.substr(colon + 1))};
}

json interpret(const Prompt& p, const std::string& raw) {
    const auto line = trim(raw);
    if (line == ":skip") return {{"skip", true}};
    if (!line.empty() && (line.front() == '{' || line.front() == '[')) {
        try {
            return json::parse(line);
        } catch (const json::parse_error& e) {
            throw Error(ErrorCode::ShapeMismatch, std::string("not valid JSON: ") + e.what());
        }
    }
    switch (p.shape) {
    case AnswerShape::Text: return unquote(line);
    case AnswerShape::TextList: return split_items(line);
    case AnswerShape::EdgeAnnotation: {
        if (p.phase == Phase::Deepening) {
            if (line == "s" || line == "saturated" || line == "y" || line == "yes") return "saturated";
            static const std::regex re(R"(^(.+?)\s*\(\s*([^,\s]+)\s*,\s*([^,\s\)]+)\s*\)$)");
            std::smatch m;
            if (std::regex_match(line, m, re))
                return {{"intermediate", unquote(m[1].str())}, {"signs", {sign_token(m[2]), sign_token(m[3])}}};
            throw Error(ErrorCode::ShapeMismatch, "answer \"saturated\", or \"<concept> (<sign>, <sign>)\"");
        }
        json links = json::array();
        for (const auto& item : split_items(line)) {
            auto [target, sign] = label_sign(item);
            links.push_back({{"target", target}, {"sign", sign}});
        }
        return links;
    }
    case AnswerShape::NodeChoice: {
        json links = json::array();
        for (auto item : split_items(line)) {
            std::string direction = "out";
            if (item.front() == '<') {
                direction = "in";
                item = item.substr(1);
            }
            auto [target, sign] = label_sign(item);
            links.push_back({{"target", target}, {"sign", sign}, {"direction", direction}});
        }
        return links;
    }
    case AnswerShape::YesNo: {
        if (line == "y" || line == "yes" || line == "true") return true;
        if (line == "n" || line == "no" || line == "false") return false;
        std::smatch m;
        static const std::regex add(R"(^add\s+(product|customer|feature|concept)\s+(.+)$)");
        static const std::regex remove(R"(^remove\s+(.+)$)");
        static const std::regex substitute(R"(^substitute\s+(.+?)\s*=>\s*(.+)$)");
        static const std::regex link(R"(^link\s+(.+?)\s*->\s*(.+?)(?:\s+([+\-o]|/o/))?$)");
        if (std::regex_match(line, m, add)) return {{"command", "add"}, {"kind", m[1].str()}, {"label", unquote(m[2])}};
        if (std::regex_match(line, m, remove)) return {{"command", "remove"}, {"id", unquote(m[1])}};
        if (std::regex_match(line, m, substitute))
            return {{"command", "substitute"}, {"id", unquote(m[1])}, {"label", unquote(m[2])}};
        if (std::regex_match(line, m, link)) {
            json c{{"command", "add_edge"}, {"src", unquote(m[1])}, {"dst", unquote(m[2])}};
            if (m[3].matched) c["sign"] = m[3].str();
            return c;
        }
        throw Error(ErrorCode::ShapeMismatch,
                    "answer yes, no, or a command: add <kind> <label> | remove <label> | "
                    "substitute <label> => <new label> | link <src> -> <dst> <sign>");
    }
    }
    return line;
}

std::string_view hint(const Prompt& p) {
    switch (p.shape) {
    case AnswerShape::Text: return "(a name)";
    case AnswerShape::TextList: return "(items separated by ';', empty for none)";
    case AnswerShape::EdgeAnnotation:
        return p.phase == Phase::Deepening ? "(saturated | <concept> (<sign>, <sign>), signs +, -, o, _ for none)"
                                           : "(<aspect>:<sign>; ... with sign +, - or o)";
    case AnswerShape::NodeChoice: return "(<concept>:<sign>; <source>:<sign> for incoming; empty for none)";
    case AnswerShape::YesNo: return "(yes | no | add/remove/substitute/link command)";
    }
    return "";
}

void print_deltas(const std::vector<Delta>& deltas, std::ostream& os) {
    for (const auto& d : deltas) {
        os << "  " << to_string(d.op) << " " << d.id;
        if (d.element.contains("label")) os << " \"" << d.element["label"].get<std::string>() << "\"";
        os << "\n";
    }
}

int finish_session(const CliConfig& cfg, ElicitationSession& session, const fs::path& log_path, Io& io) {
    auto result = session.finish();
    save_map(cfg.map_file, result.map);
    write_text(log_path, session.log_jsonl());
    io.out << "wrote " << cfg.map_file.string() << ": " << result.map.nodes().size() << " nodes, "
           << result.map.edges().size() << " edges, " << result.hypotheses.size() << " hypotheses\n";
    if (!result.unsaturated_edges.empty()) {
        io.err << paint(cfg, "warning", "33") << "[UnsaturatedEdges]: " << result.unsaturated_edges.size()
               << " relationship(s) were never marked saturated:";
        for (const auto& id : result.unsaturated_edges) io.err << " " << id;
        io.err << "\n";
    }
    return kOk;
}

int interactive(const CliConfig& cfg, ElicitationSession& session, const fs::path& log_path, Io& io) {
    for (;;) {
        if (session.confirmed()) return finish_session(cfg, session, log_path, io);
        const Prompt prompt = *session.current_prompt();
        io.out << "[" << to_string(prompt.phase) << "] " << prompt.question << "\n" << hint(prompt) << "\n> "
               << std::flush;
        std::string line;
        if (!std::getline(io.in, line)) {
            write_text(log_path, session.log_jsonl());
            io.err << "\ninput ended; progress saved to " << log_path.string() << " (continue with --resume)\n";
            return kDomainError;
        }
        if (trim(line) == ":quit") {
            write_text(log_path, session.log_jsonl());
            io.out << "progress saved to " << log_path.string() << "\n";
            return kOk;
        }
        try {
            const auto deltas = session.answer(prompt.id, interpret(prompt, line));
            print_deltas(deltas, io.out);
            write_text(log_path, session.log_jsonl());
        } catch (const Error& e) {
            io.err << paint(cfg, "error", "31") << "[" << to_string(e.code()) << "]: " << e.what() << "\n";
        }
    }
}

// ---- subcommands ----------------------------------------------------------

int cmd_new(const CliConfig& cfg, std::string product, bool force, Io& io) {
    if (fs::exists(cfg.map_file) && !force) {
        io.err << cfg.map_file.string() << " already exists (use --force to overwrite)\n";
        return kDomainError;
    }
    if (product.empty()) {
        if (cfg.non_interactive) {
            io.err << "new: --product is required with --non-interactive\n";
            return kUsageError;
        }
        io.out << kNamingQuestion << "\n> " << std::flush;
        if (!std::getline(io.in, product)) return kUsageError;
    }
    CognitiveMap map;
    map.add_node(NodeKind::Product, product);
    map.set_title(trim(product));
    save_map(cfg.map_file, map);
    io.out << "created " << cfg.map_file.string() << "\n";
    return kOk;
}

int cmd_elicit(const CliConfig& cfg, const std::string& script, bool resume, const std::string& log_opt, Io& io) {
    const fs::path log_path = log_opt.empty() ? default_log_path(cfg.map_file) : fs::path(log_opt);
    if (!script.empty()) {
        auto session = ElicitationSession::replay(read_text(script));
        if (session.done()) {
            save_map(cfg.map_file, session.map());
            if (fs::absolute(script) != fs::absolute(log_path)) write_text(log_path, session.log_jsonl());
            io.out << "wrote " << cfg.map_file.string() << ": " << session.map().nodes().size() << " nodes, "
                   << session.map().edges().size() << " edges, " << generate(session.map()).size()
                   << " hypotheses\n";
            return kOk;
        }
        if (session.confirmed()) return finish_session(cfg, session, log_path, io);
        if (cfg.non_interactive) {
            io.err << "script ends in phase " << to_string(session.phase()) << " before the map was confirmed\n";
            return kDomainError;
        }
        return interactive(cfg, session, log_path, io);
    }
    if (cfg.non_interactive) {
        io.err << "elicit: --script is required with --non-interactive\n";
        return kUsageError;
    }
    if (resume) {
        auto session = ElicitationSession::replay(read_text(log_path));
        if (session.done()) {
            io.err << "the session in " << log_path.string() << " is already finished\n";
            return kDomainError;
        }
        return interactive(cfg, session, log_path, io);
    }
    auto session = ElicitationSession::start(cfg.map_file.stem().string());
    return interactive(cfg, session, log_path, io);
}

int cmd_check(const CliConfig& cfg, Io& io) {
    const auto map = load_map(cfg, cfg.map_file, io, true);
    const auto diagnostics = validate(map);
    std::size_t errors = 0, warnings = 0;
    for (const auto& d : diagnostics) {
        const bool is_error = d.severity == Severity::Error;
        (is_error ? errors : warnings)++;
        io.out << paint(cfg, to_string(d.severity), is_error ? "31" : "33") << "[" << d.code << "]: " << d.message
               << "\n";
    }
    io.out << report_to_text(structure_report(map), map);
    io.out << cfg.map_file.string() << ": " << errors << " error(s), " << warnings << " warning(s)\n";
    return errors == 0 ? kOk : kDomainError;
}

int cmd_hypotheses(const CliConfig& cfg, bool prioritized, Io& io) {
    const auto map = load_map(cfg, cfg.map_file, io);
    auto hyps = generate(map);
    const auto registry = load_registry(cfg, hyps);
    const auto index = registry.current_index();
    if (prioritized) hyps = prioritize(std::move(hyps), index);
    const auto format = cfg.format.empty() ? "md" : cfg.format;
    if (format == "json") io.out << hypotheses_to_json(hyps, index).dump(2) << "\n";
    else if (format == "md") io.out << hypotheses_to_markdown(hyps, index);
    else {
        io.err << "hypotheses: unknown format \"" << format << "\" (md or json)\n";
        return kUsageError;
    }
    return kOk;
}

int cmd_assess(const CliConfig& cfg, const std::string& hyp_id, const std::string& status_text,
               const std::string& risk_text, const std::vector<std::string>& evidence_items,
               const std::string& recorded_at, Io& io) {
    const auto status = parse_status(status_text);
    if (!status) {
        io.err << "assess: --status must be validated, not-validated, refuted or unassessed\n";
        return kUsageError;
    }
    std::optional<RiskLevel> risk;
    if (!risk_text.empty()) {
        risk = parse_risk(risk_text);
        if (!risk) {
            io.err << "assess: --risk must be L, M or H\n";
            return kUsageError;
        }
    }
    std::vector<Evidence> evidence;
    for (const auto& item : evidence_items) {
        const auto colon = item.find(':');
        const auto kind = parse_evidence_source(item.substr(0, colon));
        if (!kind) {
            io.err << "assess: unknown evidence source \"" << item.substr(0, colon) << "\"\n";
            return kUsageError;
        }
        evidence.push_back({*kind, colon == std::string::npos ? std::string() : trim(item.substr(colon + 1)),
                            recorded_at.substr(0, std::min<std::size_t>(10, recorded_at.size()))});
    }
    const auto map = load_map(cfg, cfg.map_file, io);
    const auto hyps = generate(map);
    auto registry = load_registry(cfg, hyps);
    registry.assess(hyp_id, *status, risk, std::move(evidence), recorded_at);
    registry.save(registry_path(cfg));
    const auto* current = registry.current(hyp_id);
    io.out << hyp_id << ": " << to_string(current->status);
    if (current->risk) io.out << " (" << to_string(*current->risk) << ")";
    io.out << ", " << current->evidence.size() << " evidence, " << registry.history(hyp_id).size()
           << " assessment(s) recorded\n";
    return kOk;
}

int cmd_summary(const CliConfig& cfg, bool separate_refuted, Io& io) {
    const auto map = load_map(cfg, cfg.map_file, io);
    const auto hyps = generate(map);
    const auto registry = load_registry(cfg, hyps);
    const auto table = summarize(registry, hyps, !separate_refuted);
    const auto format = cfg.format.empty() ? "md" : cfg.format;
    if (format == "md") io.out << summary_to_markdown(table);
    else if (format == "csv") io.out << summary_to_csv(table);
    else if (format == "json") io.out << summary_to_json(table).dump(2) << "\n";
    else {
        io.err << "summary: unknown format \"" << format << "\" (md, csv or json)\n";
        return kUsageError;
    }
    return kOk;
}

int cmd_render(const CliConfig& cfg, const std::string& output, const std::string& orientation, bool no_legend,
               Io& io) {
    render::RenderOptions options;
    const auto format = render::parse_format(cfg.format.empty() ? "dot" : cfg.format);
    if (!format) {
        io.err << "render: unknown format \"" << cfg.format << "\" (dot, svg or layout)\n";
        return kUsageError;
    }
    options.format = *format;
    if (orientation == "product-bottom") options.orientation = render::Orientation::ProductBottom;
    else if (orientation != "product-top") {
        io.err << "render: --orientation must be product-top or product-bottom\n";
        return kUsageError;
    }
    options.legend = !no_legend;
    const auto map = load_map(cfg, cfg.map_file, io);
    const auto text = render::render(map, options);
    if (output.empty() || output == "-") io.out << text;
    else write_text(output, text);
    return kOk;
}

int cmd_export(const CliConfig& cfg, const std::string& output, Io& io) {
    const auto map = load_map(cfg, cfg.map_file, io);
    const auto format = cfg.format.empty() ? "json" : cfg.format;
    std::string text;
    if (format == "json") text = export_json(map) + "\n";
    else if (format == "dsl") text = dsl::serialize(map);
    else {
        io.err << "export: unknown format \"" << format << "\" (json or dsl)\n";
        return kUsageError;
    }
    if (output.empty() || output == "-") io.out << text;
    else write_text(output, text);
    return kOk;
}

int cmd_serve(const std::string& host, int port, const std::string& storage, const std::vector<std::string>& cors,
              Io& io) {
    auto config = service::ServiceConfig::from_env();
    if (!host.empty()) config.host = host;
    if (port >= 0) config.port = port;
    if (!storage.empty()) config.storage_dir = storage;
    if (!cors.empty()) config.cors_allowlist = cors;
    service::Service svc(config);
    service::HttpServer server(svc);
    const int bound = server.bind(config.host, config.port);
    if (bound < 0) {
        io.err << "cannot bind " << config.host << ":" << config.port << "\n";
        return kDomainError;
    }
    io.out << "listening on http://" << config.host << ":" << bound << "\n" << std::flush;
    return server.listen_after_bind() ? kOk : kDomainError;
}

}  // namespace

int run(const std::vector<std::string>& args, Io& io) {
    if (!io.getenv) io.getenv = [](const char* name) -> const char* { return std::getenv(name); };

    CLI::App app{"HyMap: cognitive maps to testable startup hypotheses", "hymap"};
    app.require_subcommand(1);
    app.fallthrough();

    CliConfig cfg;
    bool no_color = false;
    std::string assessments;
    app.add_flag("--no-color", no_color, "Disable colored output");
    app.add_flag("--non-interactive", cfg.non_interactive, "Never prompt; fail instead");
    app.add_option("--assessments", assessments, "Assessments file (default <map>.assessments.json)");

    std::string file;
    std::string format;
    std::string output;

    auto* sc_new = app.add_subcommand("new", "Scaffold a map with its product");
    std::string product;
    bool force = false;
    sc_new->add_option("file", file, "Map file to create")->required();
    sc_new->add_option("--product", product, "Product name");
    sc_new->add_flag("--force", force, "Overwrite an existing file");

    auto* sc_elicit = app.add_subcommand("elicit", "Guided elicitation session in the terminal");
    std::string script, log;
    bool resume = false;
    sc_elicit->add_option("file", file, "Map file to write")->required();
    sc_elicit->add_option("--script", script, "Replay a recorded session log");
    sc_elicit->add_flag("--resume", resume, "Continue from the session log");
    sc_elicit->add_option("--log", log, "Session log path (default <map>.log.jsonl)");

    auto* sc_check = app.add_subcommand("check", "Validate a map and report its structure");
    sc_check->add_option("file", file)->required();

    auto* sc_hyp = app.add_subcommand("hypotheses", "List the hypotheses of a map");
    bool prioritized = false;
    sc_hyp->add_option("file", file)->required();
    sc_hyp->add_option("--format", format, "md or json");
    sc_hyp->add_flag("--prioritized", prioritized, "Problem, then value, then product; high risk first");

    auto* sc_assess = app.add_subcommand("assess", "Record an assessment for a hypothesis");
    std::string hyp_id, status, risk, recorded_at;
    std::vector<std::string> evidence;
    sc_assess->add_option("file", file)->required();
    sc_assess->add_option("hypothesis", hyp_id)->required();
    sc_assess->add_option("--status", status, "validated | not-validated | refuted | unassessed")->required();
    sc_assess->add_option("--risk", risk, "L, M or H");
    sc_assess->add_option("--evidence", evidence, "source[:note], repeatable");
    sc_assess->add_option("--recorded-at", recorded_at, "Timestamp (default now)");

    auto* sc_summary = app.add_subcommand("summary", "Status by risk table per hypothesis kind");
    bool separate_refuted = false;
    sc_summary->add_option("file", file)->required();
    sc_summary->add_option("--format", format, "md, csv or json");
    sc_summary->add_flag("--separate-refuted", separate_refuted, "Show refuted apart from not validated");

    auto* sc_render = app.add_subcommand("render", "Draw a map as DOT, SVG or layout JSON");
    std::string orientation = "product-top";
    bool no_legend = false;
    sc_render->add_option("file", file)->required();
    sc_render->add_option("--format", format, "dot, svg or layout");
    sc_render->add_option("-o,--output", output, "Output file (default stdout)");
    sc_render->add_option("--orientation", orientation, "product-top or product-bottom");
    sc_render->add_flag("--no-legend", no_legend, "Omit the legend");

    auto* sc_export = app.add_subcommand("export", "Convert a map to JSON or DSL");
    sc_export->add_option("file", file)->required();
    sc_export->add_option("--format", format, "json or dsl");
    sc_export->add_option("-o,--output", output, "Output file (default stdout)");

    auto* sc_serve = app.add_subcommand("serve", "Run the HTTP service");
    std::string host, storage;
    int port = -1;
    std::vector<std::string> cors;
    sc_serve->add_option("--host", host, "Bind address (HYMAP_HOST)");
    sc_serve->add_option("--port", port, "Port, 0 for any (HYMAP_PORT)");
    sc_serve->add_option("--storage", storage, "Storage directory (HYMAP_STORAGE)");
    sc_serve->add_option("--cors", cors, "Allowed origin, repeatable (HYMAP_CORS)");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, io.out, io.err);
        return code == 0 ? kOk : kUsageError;
    }

    if (!file.empty()) cfg.map_file = fs::absolute(file);
    if (!assessments.empty()) cfg.assessments = fs::absolute(assessments);
    cfg.format = format;
    if (cfg.format.empty()) {
        if (sc_hyp->parsed()) cfg.format = env_format(io, {"md", "json"});
        if (sc_summary->parsed()) cfg.format = env_format(io, {"md", "csv", "json"});
        if (sc_render->parsed()) cfg.format = env_format(io, {"dot", "svg", "layout"});
    }
    cfg.color = io.tty && !no_color && io.getenv("NO_COLOR") == nullptr;

    try {
        if (sc_new->parsed()) return cmd_new(cfg, product, force, io);
        if (sc_elicit->parsed()) return cmd_elicit(cfg, script, resume, log, io);
        if (sc_check->parsed()) return cmd_check(cfg, io);
        if (sc_hyp->parsed()) return cmd_hypotheses(cfg, prioritized, io);
        if (sc_assess->parsed()) return cmd_assess(cfg, hyp_id, status, risk, evidence, recorded_at, io);
        if (sc_summary->parsed()) return cmd_summary(cfg, separate_refuted, io);
        if (sc_render->parsed()) return cmd_render(cfg, output, orientation, no_legend, io);
        if (sc_export->parsed()) return cmd_export(cfg, output, io);
        if (sc_serve->parsed()) return cmd_serve(host, port, storage, cors, io);
    } catch (const Exit& e) {
        return e.code;
    } catch (const Error& e) {
        io.err << paint(cfg, "error", "31") << "[" << to_string(e.code()) << "]: " << e.what() << "\n";
        return e.code() == ErrorCode::ParseError || e.code() == ErrorCode::SchemaViolation ? kParseError
                                                                                             : kDomainError;
    }
    return kUsageError;
}

}  // namespace hymap::cli
