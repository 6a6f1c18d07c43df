// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "hymap/dsl.hpp"

#include "hymap/error.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace hymap::dsl {

SourceDocument::SourceDocument(std::string text) : text_(std::move(text)) {
    std::string_view rest(text_);
    while (!rest.empty()) {
        auto nl = rest.find('\n');
        auto line = rest.substr(0, nl);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines_.push_back(line);
        if (nl == std::string_view::npos) break;
        rest.remove_prefix(nl + 1);
    }
}

std::string_view SourceDocument::line(std::size_t number) const noexcept {
    if (number == 0 || number > lines_.size()) return {};
    return lines_[number - 1];
}

bool ParseResult::has_syntax_errors() const noexcept {
    return std::any_of(errors.begin(), errors.end(), [](const ParseDiagnostic& d) { return d.syntax; });
}

namespace {

enum class TokenType { Word, Label, SignArrow, Arrow };

struct Token {
    TokenType type;
    std::string text;
    Sign sign = Sign::Positive;
    int column = 0;
};

enum class Keyword { Product, Customer, Feature, Concept, Offers, Influences, Perceives };

struct Statement {
    Keyword keyword;
    int line = 0;
    int column = 0;
    std::vector<Token> labels;  // quoted operands in source order
    std::optional<NodeKind> qualifier;
    std::optional<Sign> sign;
    ProblemVerb verb = ProblemVerb::Has;
};

std::optional<Keyword> keyword_of(std::string_view word) {
    if (word == "product") return Keyword::Product;
    if (word == "customer") return Keyword::Customer;
    if (word == "feature") return Keyword::Feature;
    if (word == "concept") return Keyword::Concept;
    if (word == "offers") return Keyword::Offers;
    if (word == "influences") return Keyword::Influences;
    if (word == "perceives") return Keyword::Perceives;
    return std::nullopt;
}

NodeKind declared_kind(Keyword k) {
    switch (k) {
    case Keyword::Product: return NodeKind::Product;
    case Keyword::Customer: return NodeKind::Customer;
    case Keyword::Feature: return NodeKind::Feature;
    default: return NodeKind::Concept;
    }
}

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-';
}

class LineParser {
public:
    LineParser(std::string_view line, int number, std::vector<ParseDiagnostic>& errors)
        : line_(line), number_(number), errors_(errors) {}

    // Returns false after recording a diagnostic.
    bool tokenize(std::vector<Token>& out) {
        std::size_t i = 0;
        while (i < line_.size()) {
            const char c = line_[i];
            const int column = static_cast<int>(i) + 1;
            if (c == ' ' || c == '\t') {
                ++i;
            } else if (c == '#') {
                break;
            } else if (c == '"') {
                std::string value;
                ++i;
                bool closed = false;
                while (i < line_.size()) {
                    const char d = line_[i];
                    if (d == '"') {
                        closed = true;
                        ++i;
                        break;
                    }
                    if (d == '\\') {
                        if (i + 1 >= line_.size()) break;
                        const char e = line_[i + 1];
                        if (e == '"' || e == '\\') value.push_back(e);
                        else if (e == 'n') value.push_back('\n');
                        else if (e == 't') value.push_back('\t');
                        else {
                            fail(static_cast<int>(i) + 1, "InvalidEscape",
                                 std::string("unknown escape sequence \\") + e);
                            return false;
                        }
                        i += 2;
                        continue;
                    }
                    value.push_back(d);
                    ++i;
                }
                if (!closed) {
                    fail(column, "UnterminatedQuote", "label is missing its closing quote");
                    return false;
                }
                out.push_back({TokenType::Label, std::move(value), Sign::Positive, column});
            } else if (line_.substr(i).starts_with("->")) {
                out.push_back({TokenType::Arrow, "->", Sign::Positive, column});
                i += 2;
            } else if (line_.substr(i).starts_with("-(")) {
                const auto rest = line_.substr(i);
                std::optional<Sign> sign;
                if (rest.starts_with("-(+)->")) sign = Sign::Positive;
                else if (rest.starts_with("-(-)->")) sign = Sign::Negative;
                else if (rest.starts_with("-(o)->")) sign = Sign::Neutral;
                if (!sign) {
                    fail(column, "InvalidSign", "expected one of -(+)->, -(-)->, -(o)->");
                    return false;
                }
                out.push_back({TokenType::SignArrow, std::string(rest.substr(0, 6)), *sign, column});
                i += 6;
            } else if (is_word_char(c)) {
                std::size_t j = i;
                while (j < line_.size() && is_word_char(line_[j])) ++j;
                out.push_back({TokenType::Word, std::string(line_.substr(i, j - i)), Sign::Positive, column});
                i = j;
            } else {
                fail(column, "UnexpectedCharacter", std::string("unexpected character '") + c + "'");
                return false;
            }
        }
        return true;
    }

    std::optional<Statement> statement(const std::vector<Token>& tokens) {
        const auto& head = tokens.front();
        if (head.type != TokenType::Word) {
            fail(head.column, "ExpectedKeyword", "a statement must start with a keyword");
            return std::nullopt;
        }
        const auto keyword = keyword_of(head.text);
        if (!keyword) {
            fail(head.column, "UnknownKeyword", "unknown keyword '" + head.text + "'");
            return std::nullopt;
        }
        Statement st{*keyword, number_, head.column, {}, std::nullopt, std::nullopt, ProblemVerb::Has};
        std::size_t at = 1;
        auto expect_label = [&]() -> bool {
            if (at >= tokens.size() || tokens[at].type != TokenType::Label) {
                fail(at < tokens.size() ? tokens[at].column : end_column(), "ExpectedLabel",
                     "expected a double-quoted label");
                return false;
            }
            st.labels.push_back(tokens[at++]);
            return true;
        };

        switch (*keyword) {
        case Keyword::Product:
        case Keyword::Customer:
        case Keyword::Feature:
        case Keyword::Concept:
        case Keyword::Offers:
            if (!expect_label()) return std::nullopt;
            break;
        case Keyword::Influences:
            if (at < tokens.size() && tokens[at].type == TokenType::Word) {
                if (tokens[at].text == "feature") st.qualifier = NodeKind::Feature;
                else if (tokens[at].text == "concept") st.qualifier = NodeKind::Concept;
                else {
                    fail(tokens[at].column, "ExpectedLabel", "expected a label or a feature/concept qualifier");
                    return std::nullopt;
                }
                ++at;
            }
            if (!expect_label()) return std::nullopt;
            if (at >= tokens.size() || tokens[at].type != TokenType::SignArrow) {
                fail(at < tokens.size() ? tokens[at].column : end_column(), "ExpectedSign",
                     "expected a signed arrow: -(+)->, -(-)-> or -(o)->");
                return std::nullopt;
            }
            st.sign = tokens[at++].sign;
            if (!expect_label()) return std::nullopt;
            break;
        case Keyword::Perceives:
            if (!expect_label()) return std::nullopt;
            if (at >= tokens.size() || tokens[at].type != TokenType::Arrow) {
                fail(at < tokens.size() ? tokens[at].column : end_column(), "ExpectedArrow",
                     tokens.size() > at && tokens[at].type == TokenType::SignArrow
                         ? "perception arrows carry no sign; use ->"
                         : "expected ->");
                return std::nullopt;
            }
            ++at;
            if (!expect_label()) return std::nullopt;
            if (at < tokens.size() && tokens[at].type == TokenType::Word && tokens[at].text == "wish") {
                st.verb = ProblemVerb::WouldLikeTo;
                ++at;
            }
            break;
        }
        if (at < tokens.size()) {
            fail(tokens[at].column, "TrailingInput", "unexpected input after statement");
            return std::nullopt;
        }
        return st;
    }

private:
    int end_column() const { return static_cast<int>(line_.size()) + 1; }

    void fail(int column, std::string code, std::string message) {
        errors_.push_back({number_, column, std::move(code), std::move(message), std::string(line_), true});
    }

    std::string_view line_;
    int number_;
    std::vector<ParseDiagnostic>& errors_;
};

std::string describe(const CognitiveMap& map, const Error& err) {
    std::string message = err.what();
    if (err.code() == ErrorCode::WouldCreateCycle) {
        std::string path;
        for (const auto& id : err.subjects()) {
            const auto* n = map.find_node(id);
            path += (path.empty() ? "" : " -> ") + quote(n ? n->label : id);
        }
        message += ": " + path;
    }
    return message;
}

}  // namespace

ParseResult parse(std::string_view text) { return parse(SourceDocument(std::string(text))); }

ParseResult parse(const SourceDocument& doc) {
    ParseResult result;
    std::vector<Statement> statements;
    for (std::size_t n = 1; n <= doc.line_count(); ++n) {
        LineParser lp(doc.line(n), static_cast<int>(n), result.errors);
        std::vector<Token> tokens;
        if (!lp.tokenize(tokens) || tokens.empty()) continue;
        if (auto st = lp.statement(tokens)) statements.push_back(std::move(*st));
    }
    if (!result.errors.empty()) return result;

    auto semantic = [&](const Statement& st, int column, std::string code, std::string message) {
        result.errors.push_back({st.line, column, std::move(code), std::move(message),
                                 std::string(doc.line(static_cast<std::size_t>(st.line))), false});
    };

    if (statements.empty() || statements.front().keyword != Keyword::Product) {
        const int line = statements.empty() ? 1 : statements.front().line;
        result.errors.push_back({line, 1, "MissingProductHeader",
                                 "a map must start with a product \"...\" header",
                                 std::string(doc.line(static_cast<std::size_t>(line))), true});
        return result;
    }

    CognitiveMap map(statements.front().labels.front().text);

    // Declarations first, so statement order never changes the resulting map.
    for (const auto& st : statements) {
        if (st.keyword != Keyword::Product && st.keyword != Keyword::Customer && st.keyword != Keyword::Feature &&
            st.keyword != Keyword::Concept)
            continue;
        const auto& label = st.labels.front();
        const auto kind = declared_kind(st.keyword);
        if (kind != NodeKind::Product) {
            if (const auto* existing = map.find_by_label(kind, label.text)) {
                result.warnings.push_back({st.line, label.column, "DuplicateDeclaration",
                                           std::string(to_string(kind)) + " " + quote(existing->label) +
                                               " is already declared",
                                           std::string(doc.line(static_cast<std::size_t>(st.line))), false});
                continue;
            }
        }
        try {
            map.add_node(kind, label.text);
        } catch (const Error& err) {
            semantic(st, label.column, std::string(to_string(err.code())), err.what());
        }
    }

    auto resolve = [&](const Statement& st, const Token& label, std::initializer_list<NodeKind> wanted,
                       std::string_view role) -> const MapNode* {
        std::vector<const MapNode*> hits;
        for (auto kind : wanted) {
            if (const auto* n = map.find_by_label(kind, label.text)) hits.push_back(n);
        }
        if (hits.size() == 1) return hits.front();
        if (hits.size() > 1) {
            semantic(st, label.column, "AmbiguousReference",
                     quote(label.text) + " names both a feature and a concept; qualify it with feature or concept");
            return nullptr;
        }
        for (auto kind : kAllNodeKinds) {
            if (const auto* n = map.find_by_label(kind, label.text)) {
                semantic(st, label.column, "IllegalEndpointPair",
                         quote(n->label) + " is a " + std::string(to_string(kind)) + ", but " + std::string(role));
                return nullptr;
            }
        }
        semantic(st, label.column, "UndeclaredNode", quote(label.text) + " is not declared");
        return nullptr;
    };

    for (const auto& st : statements) {
        const MapNode* src = nullptr;
        const MapNode* dst = nullptr;
        switch (st.keyword) {
        case Keyword::Product:
            if (&st != &statements.front())
                semantic(st, st.labels.front().column, "SecondProduct", "a map has exactly one product header");
            continue;
        case Keyword::Customer:
        case Keyword::Feature:
        case Keyword::Concept:
            continue;
        case Keyword::Offers:
            src = map.product();
            dst = resolve(st, st.labels[0], {NodeKind::Feature}, "offers needs a feature");
            break;
        case Keyword::Influences:
            if (st.qualifier)
                src = resolve(st, st.labels[0], {*st.qualifier}, "the qualifier names a different kind");
            else
                src = resolve(st, st.labels[0], {NodeKind::Feature, NodeKind::Concept},
                              "influences must start at a feature or concept");
            dst = resolve(st, st.labels[1], {NodeKind::Concept}, "influences must end at a concept");
            break;
        case Keyword::Perceives:
            src = resolve(st, st.labels[0], {NodeKind::Customer}, "perceives must start at a customer");
            dst = resolve(st, st.labels[1], {NodeKind::Concept}, "perceives must end at a concept");
            break;
        }
        if (src == nullptr || dst == nullptr) continue;
        try {
            map.add_edge(src->id, dst->id, st.sign, st.verb);
        } catch (const Error& err) {
            if (err.code() == ErrorCode::DuplicateEdge) {
                result.warnings.push_back({st.line, st.column, "DuplicateDeclaration", err.what(),
                                           std::string(doc.line(static_cast<std::size_t>(st.line))), false});
                continue;
            }
            semantic(st, st.column, std::string(to_string(err.code())), describe(map, err));
        }
    }

    if (result.errors.empty()) result.map = std::move(map);
    return result;
}

std::string quote(std::string_view label) {
    std::string out = "\"";
    for (char c : label) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

std::string serialize(const CognitiveMap& map) {
    auto label = [&](const std::string& id) -> const std::string& { return map.find_node(id)->label; };
    auto kind_of = [&](const std::string& id) { return map.find_node(id)->kind; };

    std::string out;
    if (const auto* p = map.product()) out += "product " + quote(p->label) + "\n";

    for (auto [kind, keyword] : {std::pair{NodeKind::Customer, "customer"}, std::pair{NodeKind::Feature, "feature"},
                                 std::pair{NodeKind::Concept, "concept"}}) {
        std::vector<std::string> labels;
        for (const auto& n : map.nodes())
            if (n.kind == kind) labels.push_back(n.label);
        std::sort(labels.begin(), labels.end());
        std::vector<std::string> lines;
        for (const auto& l : labels) lines.push_back(std::string(keyword) + " " + quote(l));
        if (lines.empty()) continue;
        out += "\n";
        for (const auto& l : lines) out += l + "\n";
    }

    using Row = std::tuple<std::string, int, std::string, std::string>;
    std::vector<Row> offers, influences, perceives;
    for (const auto& e : map.edges()) {
        const auto& s = label(e.src);
        const auto& d = label(e.dst);
        switch (e.kind) {
        case EdgeKind::Offering:
            offers.emplace_back(d, 0, "", "offers " + quote(d));
            break;
        case EdgeKind::Influence: {
            const auto src_kind = kind_of(e.src);
            const bool ambiguous = map.find_by_label(NodeKind::Feature, s) && map.find_by_label(NodeKind::Concept, s);
            std::string line = "influences ";
            if (ambiguous) line += std::string(to_string(src_kind)) + " ";
            line += quote(s) + " -(" + std::string(symbol(e.sign.value_or(Sign::Neutral))) + ")-> " + quote(d);
            influences.emplace_back(s, static_cast<int>(src_kind), d, std::move(line));
            break;
        }
        case EdgeKind::Perception:
            perceives.emplace_back(s, 0, d,
                                   "perceives " + quote(s) + " -> " + quote(d) +
                                       (e.verb == ProblemVerb::WouldLikeTo ? " wish" : ""));
            break;
        }
    }
    for (auto* rows : {&offers, &influences, &perceives}) {
        std::sort(rows->begin(), rows->end());
        std::vector<std::string> lines;
        for (auto& r : *rows) lines.push_back(std::get<3>(r));
        if (lines.empty()) continue;
        out += "\n";
        for (const auto& l : lines) out += l + "\n";
    }
    return out;
}

nlohmann::json diagnostics_to_json(const std::vector<ParseDiagnostic>& diagnostics) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& d : diagnostics) {
        out.push_back({{"line", d.line},
                       {"column", d.column},
                       {"code", d.code},
                       {"message", d.message},
                       {"excerpt", d.excerpt},
                       {"syntax", d.syntax}});
    }
    return out;
}

}  // namespace hymap::dsl
