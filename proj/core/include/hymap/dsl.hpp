// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#pragma once

#include "hymap/model.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hymap::dsl {

/// Source text split into lines. LF and CRLF line endings are both accepted;
/// line and column numbers are 1-based, columns count bytes.
class SourceDocument {
public:
    explicit SourceDocument(std::string text);

    const std::string& text() const noexcept { return text_; }
    std::size_t line_count() const noexcept { return lines_.size(); }
    /// Line content without its terminator; empty for out-of-range lines.
    std::string_view line(std::size_t number) const noexcept;

private:
    std::string text_;
    std::vector<std::string_view> lines_;
};

struct ParseDiagnostic {
    int line = 0;
    int column = 0;
    std::string code;
    std::string message;
    std::string excerpt;
    /// True for lexical/grammar errors, false for errors raised by the map
    /// rules (cycle, illegal pair, undeclared node).
    bool syntax = true;
};

/// Exactly one of `map` and `errors` is populated. Warnings (for example a
/// repeated identical declaration) may accompany a successful parse.
struct ParseResult {
    std::optional<CognitiveMap> map;
    std::vector<ParseDiagnostic> errors;
    std::vector<ParseDiagnostic> warnings;

    bool ok() const noexcept { return map.has_value(); }
    bool has_syntax_errors() const noexcept;
};

/// Parses `.hymap` source:
///
///     product "NetFix"                          # header, must come first
///     customer "mobile users"
///     feature "status overlay"
///     concept "network efficiency"
///     offers "status overlay"
///     influences "network efficiency" -(+)-> "user satisfaction"
///     influences feature "x" -(o)-> "y"         # qualifier when a label is both
///     perceives "mobile users" -> "network efficiency" [wish]
///
/// Declarations may appear anywhere after the header; edges reference labels.
/// [{line, column, code, message, excerpt, syntax}]
nlohmann::json diagnostics_to_json(const std::vector<ParseDiagnostic>& diagnostics);

ParseResult parse(std::string_view text);
ParseResult parse(const SourceDocument& doc);

/// Canonical text: header, then customers, features and concepts sorted by
/// label, then offers, influences and perceives sorted by endpoint labels.
/// Depends only on map structure, never on ids.
std::string serialize(const CognitiveMap& map);

/// Escapes and quotes a label for the source format.
std::string quote(std::string_view label);

}  // namespace hymap::dsl
