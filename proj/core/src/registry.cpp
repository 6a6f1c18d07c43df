// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "hymap/registry.hpp"

#include "hymap/error.hpp"
#include "hymap/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace hymap {

namespace {

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

constexpr EvidenceSource kAllSources[] = {
    EvidenceSource::OwnExperience, EvidenceSource::OfflineSurvey,
    EvidenceSource::OnlineSurvey,  EvidenceSource::SimilarTools,
    EvidenceSource::ResemblingBusinessModels, EvidenceSource::ProductUsage,
    EvidenceSource::Interviews,    EvidenceSource::Other,
};

constexpr HypothesisKind kKinds[] = {HypothesisKind::Problem, HypothesisKind::Value, HypothesisKind::Product};

}  // namespace

std::string_view to_string(ValidationStatus status) noexcept {
    switch (status) {
    case ValidationStatus::Unassessed: return "unassessed";
    case ValidationStatus::Validated: return "validated";
    case ValidationStatus::Refuted: return "refuted";
    case ValidationStatus::NotValidated: return "not-validated";
    }
    return "unassessed";
}

std::string_view to_string(RiskLevel risk) noexcept {
    switch (risk) {
    case RiskLevel::Low: return "L";
    case RiskLevel::Medium: return "M";
    case RiskLevel::High: return "H";
    }
    return "?";
}

std::string_view to_string(EvidenceSource source) noexcept {
    switch (source) {
    case EvidenceSource::OwnExperience: return "own-experience";
    case EvidenceSource::OfflineSurvey: return "offline-survey";
    case EvidenceSource::OnlineSurvey: return "online-survey";
    case EvidenceSource::SimilarTools: return "similar-tools";
    case EvidenceSource::ResemblingBusinessModels: return "resembling-business-models";
    case EvidenceSource::ProductUsage: return "product-usage";
    case EvidenceSource::Interviews: return "interviews";
    case EvidenceSource::Other: return "other";
    }
    return "other";
}

std::optional<ValidationStatus> parse_status(std::string_view text) noexcept {
    const auto t = lower(text);
    if (t == "unassessed") return ValidationStatus::Unassessed;
    if (t == "validated") return ValidationStatus::Validated;
    if (t == "refuted") return ValidationStatus::Refuted;
    if (t == "not-validated" || t == "not_validated" || t == "notvalidated") return ValidationStatus::NotValidated;
    return std::nullopt;
}

std::optional<RiskLevel> parse_risk(std::string_view text) noexcept {
    const auto t = lower(text);
    if (t == "l" || t == "low") return RiskLevel::Low;
    if (t == "m" || t == "medium") return RiskLevel::Medium;
    if (t == "h" || t == "high") return RiskLevel::High;
    return std::nullopt;
}

std::optional<EvidenceSource> parse_evidence_source(std::string_view text) noexcept {
    auto t = lower(text);
    std::replace(t.begin(), t.end(), '_', '-');
    for (auto s : kAllSources) {
        if (to_string(s) == t) return s;
    }
    return std::nullopt;
}

Registry::Registry(const std::vector<Hypothesis>& hypotheses) { set_known(hypotheses); }

void Registry::set_known(const std::vector<Hypothesis>& hypotheses) {
    known_.clear();
    for (const auto& h : hypotheses) known_.insert(h.id);
}

bool Registry::knows(std::string_view hypothesis_id) const { return known_.find(hypothesis_id) != known_.end(); }

void Registry::assess(std::string_view hypothesis_id, ValidationStatus status, std::optional<RiskLevel> risk,
                      std::vector<Evidence> evidence, std::string recorded_at) {
    if (!knows(hypothesis_id))
        throw Error(ErrorCode::UnknownHypothesis, "no hypothesis with id \"" + std::string(hypothesis_id) + "\"",
                    {std::string(hypothesis_id)});
    if (status == ValidationStatus::Validated && evidence.empty())
        throw Error(ErrorCode::ValidatedWithoutEvidence,
                    "a validated hypothesis needs at least one evidence entry", {std::string(hypothesis_id)});
    if (recorded_at.empty()) recorded_at = format_timestamp(std::chrono::system_clock::now());
    history_[std::string(hypothesis_id)].push_back(
        {std::string(hypothesis_id), status, risk, std::move(evidence), std::move(recorded_at)});
}

const Assessment* Registry::current(std::string_view hypothesis_id) const {
    auto it = history_.find(hypothesis_id);
    return it == history_.end() || it->second.empty() ? nullptr : &it->second.back();
}

const std::vector<Assessment>& Registry::history(std::string_view hypothesis_id) const {
    static const std::vector<Assessment> empty;
    auto it = history_.find(hypothesis_id);
    return it == history_.end() ? empty : it->second;
}

AssessmentIndex Registry::current_index() const {
    AssessmentIndex out;
    for (const auto& [id, entries] : history_) {
        if (!entries.empty()) out.emplace(id, entries.back());
    }
    return out;
}

nlohmann::json assessment_to_json(const Assessment& a) {
    nlohmann::json evidence = nlohmann::json::array();
    for (const auto& e : a.evidence) evidence.push_back({{"source", to_string(e.source)}, {"note", e.note}, {"date", e.date}});
    return {{"status", to_string(a.status)},
            {"risk", a.risk ? nlohmann::json(to_string(*a.risk)) : nlohmann::json()},
            {"evidence", std::move(evidence)},
            {"recorded_at", a.recorded_at}};
}

nlohmann::json Registry::to_json() const {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& [id, entries] : history_) {
        nlohmann::json history = nlohmann::json::array();
        for (const auto& a : entries) history.push_back(assessment_to_json(a));
        items.push_back({{"hypothesis_id", id}, {"history", std::move(history)}});
    }
    return {{"version", kRegistrySchemaVersion}, {"assessments", std::move(items)}};
}

Registry Registry::from_json(const nlohmann::json& doc, const std::vector<Hypothesis>& hypotheses) {
    auto corrupt = [](const std::string& where, const std::string& what) -> Error {
        return Error(ErrorCode::CorruptFile, where + ": " + what, {}, where);
    };
    if (!doc.is_object() || !doc.contains("version")) throw corrupt("", "expected an object with a version");
    if (!doc["version"].is_number_integer() || doc["version"].get<int>() != kRegistrySchemaVersion)
        throw Error(ErrorCode::UnsupportedVersion,
                    "unsupported assessments schema version " + doc["version"].dump(), {}, "/version");
    if (!doc.contains("assessments") || !doc["assessments"].is_array())
        throw corrupt("/assessments", "expected an array");

    Registry registry(hypotheses);
    const auto& items = doc["assessments"];
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto ptr = "/assessments/" + std::to_string(i);
        const auto& item = items[i];
        if (!item.is_object() || !item.contains("hypothesis_id") || !item["hypothesis_id"].is_string())
            throw corrupt(ptr, "expected an object with a hypothesis_id");
        const auto id = item["hypothesis_id"].get<std::string>();
        if (!registry.knows(id))
            throw Error(ErrorCode::DanglingAssessment, ptr + ": assessment for unknown hypothesis \"" + id + "\"",
                        {id}, ptr);
        if (!item.contains("history") || !item["history"].is_array() || item["history"].empty())
            throw corrupt(ptr + "/history", "expected a non-empty array");
        auto& entries = registry.history_[id];
        for (std::size_t j = 0; j < item["history"].size(); ++j) {
            const auto hptr = ptr + "/history/" + std::to_string(j);
            const auto& h = item["history"][j];
            try {
                Assessment a;
                a.hypothesis_id = id;
                const auto status = parse_status(h.at("status").get<std::string>());
                if (!status) throw corrupt(hptr + "/status", "unknown status");
                a.status = *status;
                if (h.contains("risk") && !h["risk"].is_null()) {
                    a.risk = parse_risk(h["risk"].get<std::string>());
                    if (!a.risk) throw corrupt(hptr + "/risk", "unknown risk level");
                }
                for (const auto& e : h.at("evidence")) {
                    const auto source = parse_evidence_source(e.at("source").get<std::string>());
                    if (!source) throw corrupt(hptr + "/evidence", "unknown evidence source");
                    a.evidence.push_back({*source, e.value("note", ""), e.value("date", "")});
                }
                a.recorded_at = h.value("recorded_at", "");
                if (a.status == ValidationStatus::Validated && a.evidence.empty())
                    throw Error(ErrorCode::ValidatedWithoutEvidence,
                                hptr + ": validated assessment without evidence", {id}, hptr);
                entries.push_back(std::move(a));
            } catch (const nlohmann::json::exception& e) {
                throw corrupt(hptr, e.what());
            }
        }
    }
    return registry;
}

void Registry::save(const std::filesystem::path& path) const {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp);
        out << to_json().dump(2) << "\n";
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

Registry Registry::load(const std::filesystem::path& path, const std::vector<Hypothesis>& hypotheses) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::CorruptFile, path.string() + ": " + e.what());
    }
    return from_json(doc, hypotheses);
}

std::filesystem::path assessments_path_for(const std::filesystem::path& map_path) {
    auto out = map_path;
    out.replace_extension();
    out += ".assessments.json";
    return out;
}

std::size_t SummaryTable::cell(HypothesisKind kind, SummaryRow row, std::size_t risk_column) const {
    return counts.at(static_cast<std::size_t>(kind)).at(static_cast<std::size_t>(row)).at(risk_column);
}

std::size_t SummaryTable::cell(HypothesisKind kind, SummaryRow row, RiskLevel risk) const {
    return cell(kind, row, static_cast<std::size_t>(risk));
}

std::size_t SummaryTable::row_total(HypothesisKind kind, SummaryRow row) const {
    std::size_t n = 0;
    for (std::size_t r = 0; r < kRiskColumns; ++r) n += cell(kind, row, r);
    return n;
}

std::size_t SummaryTable::kind_total(HypothesisKind kind) const {
    std::size_t n = 0;
    for (std::size_t row = 0; row < kSummaryRows; ++row) n += row_total(kind, static_cast<SummaryRow>(row));
    return n;
}

std::size_t SummaryTable::total() const {
    std::size_t n = 0;
    for (auto kind : kKinds) n += kind_total(kind);
    return n;
}

SummaryTable summarize(const Registry& registry, const std::vector<Hypothesis>& hypotheses, bool fold_refuted) {
    SummaryTable table;
    table.fold_refuted = fold_refuted;
    for (const auto& h : hypotheses) {
        SummaryRow row = SummaryRow::Unassessed;
        std::size_t risk = kUnratedColumn;
        if (const auto* a = registry.current(h.id)) {
            switch (a->status) {
            case ValidationStatus::Validated: row = SummaryRow::Validated; break;
            case ValidationStatus::NotValidated: row = SummaryRow::NotValidated; break;
            case ValidationStatus::Refuted: row = fold_refuted ? SummaryRow::NotValidated : SummaryRow::Refuted; break;
            case ValidationStatus::Unassessed: row = SummaryRow::Unassessed; break;
            }
            if (a->risk) risk = static_cast<std::size_t>(*a->risk);
        }
        ++table.counts[static_cast<std::size_t>(h.kind)][static_cast<std::size_t>(row)][risk];
    }
    return table;
}

namespace {

constexpr const char* kRowKeys[] = {"validated", "not-validated", "refuted", "unassessed"};
constexpr const char* kRowTitles[] = {"Validated", "Not validated", "Refuted", "Unassessed"};
constexpr const char* kRiskKeys[] = {"L", "M", "H", "unrated"};

std::vector<SummaryRow> visible_rows(const SummaryTable& t) {
    std::vector<SummaryRow> rows{SummaryRow::Validated, SummaryRow::NotValidated};
    if (!t.fold_refuted) rows.push_back(SummaryRow::Refuted);
    rows.push_back(SummaryRow::Unassessed);
    return rows;
}

bool any_unrated(const SummaryTable& t) {
    for (auto kind : kKinds)
        for (std::size_t row = 0; row < kSummaryRows; ++row)
            if (t.cell(kind, static_cast<SummaryRow>(row), kUnratedColumn) != 0) return true;
    return false;
}

std::string dash(std::size_t n) { return n == 0 ? "-" : std::to_string(n); }

std::string title_case(HypothesisKind kind) {
    auto s = std::string(to_string(kind));
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

}  // namespace

nlohmann::json summary_to_json(const SummaryTable& t) {
    nlohmann::json rows = nlohmann::json::object();
    for (std::size_t row = 0; row < kSummaryRows; ++row) {
        if (t.fold_refuted && static_cast<SummaryRow>(row) == SummaryRow::Refuted) continue;
        nlohmann::json kinds = nlohmann::json::object();
        for (auto kind : kKinds) {
            nlohmann::json cells = nlohmann::json::object();
            for (std::size_t r = 0; r < kRiskColumns; ++r)
                cells[kRiskKeys[r]] = t.cell(kind, static_cast<SummaryRow>(row), r);
            cells["total"] = t.row_total(kind, static_cast<SummaryRow>(row));
            kinds[std::string(to_string(kind))] = std::move(cells);
        }
        rows[kRowKeys[row]] = std::move(kinds);
    }
    nlohmann::json totals = nlohmann::json::object();
    for (auto kind : kKinds) totals[std::string(to_string(kind))] = t.kind_total(kind);
    return {{"fold_refuted", t.fold_refuted}, {"rows", rows}, {"totals", totals}, {"total", t.total()}};
}

std::string summary_to_markdown(const SummaryTable& t) {
    const bool unrated = any_unrated(t);
    const std::size_t risks = unrated ? kRiskColumns : 3;
    std::ostringstream out;
    out << "| Hypotheses |";
    for (auto kind : kKinds) {
        for (std::size_t r = 0; r < risks; ++r) out << " " << title_case(kind) << " " << (r == 3 ? "?" : kRiskKeys[r]) << " |";
        out << " " << title_case(kind) << " Total |";
    }
    out << " Total |\n|---|";
    for (std::size_t i = 0; i < 3 * (risks + 1) + 1; ++i) out << "---|";
    out << "\n";
    for (auto row : visible_rows(t)) {
        out << "| " << kRowTitles[static_cast<std::size_t>(row)] << " |";
        std::size_t all = 0;
        for (auto kind : kKinds) {
            for (std::size_t r = 0; r < risks; ++r) out << " " << dash(t.cell(kind, row, r)) << " |";
            out << " " << dash(t.row_total(kind, row)) << " |";
            all += t.row_total(kind, row);
        }
        out << " " << dash(all) << " |\n";
    }
    out << "| Total |";
    for (auto kind : kKinds) {
        for (std::size_t r = 0; r < risks; ++r) {
            std::size_t n = 0;
            for (std::size_t row = 0; row < kSummaryRows; ++row) n += t.cell(kind, static_cast<SummaryRow>(row), r);
            out << " " << dash(n) << " |";
        }
        out << " " << t.kind_total(kind) << " |";
    }
    out << " " << t.total() << " |\n";
    return out.str();
}

std::string summary_to_csv(const SummaryTable& t) {
    std::ostringstream out;
    out << "status";
    for (auto kind : kKinds) {
        for (std::size_t r = 0; r < kRiskColumns; ++r) out << "," << to_string(kind) << "_" << kRiskKeys[r];
        out << "," << to_string(kind) << "_total";
    }
    out << ",total\n";
    for (auto row : visible_rows(t)) {
        out << kRowKeys[static_cast<std::size_t>(row)];
        std::size_t all = 0;
        for (auto kind : kKinds) {
            for (std::size_t r = 0; r < kRiskColumns; ++r) out << "," << t.cell(kind, row, r);
            out << "," << t.row_total(kind, row);
            all += t.row_total(kind, row);
        }
        out << "," << all << "\n";
    }
    return out.str();
}

}  // namespace hymap
