// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#pragma once

#include "hymap/assessment.hpp"
#include "hymap/hypotheses.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace hymap {

inline constexpr int kRegistrySchemaVersion = 1;

/// {status, risk, evidence: [{source, note, date}], recorded_at}
nlohmann::json assessment_to_json(const Assessment& assessment);

/// Assessment history for the hypotheses of one map. The latest entry per
/// hypothesis is current; earlier entries are never modified.
class Registry {
public:
    Registry() = default;
    explicit Registry(const std::vector<Hypothesis>& hypotheses);

    /// Replaces the set of hypothesis ids that may be assessed.
    void set_known(const std::vector<Hypothesis>& hypotheses);
    bool knows(std::string_view hypothesis_id) const;

    /// Throws UnknownHypothesis or ValidatedWithoutEvidence. An empty
    /// `recorded_at` is replaced by the current UTC time.
    void assess(std::string_view hypothesis_id, ValidationStatus status, std::optional<RiskLevel> risk,
                std::vector<Evidence> evidence, std::string recorded_at = {});

    const Assessment* current(std::string_view hypothesis_id) const;
    /// Oldest first; the last entry is current. Empty when never assessed.
    const std::vector<Assessment>& history(std::string_view hypothesis_id) const;
    AssessmentIndex current_index() const;
    std::size_t assessed_count() const noexcept { return history_.size(); }

    nlohmann::json to_json() const;
    /// Throws CorruptFile, UnsupportedVersion, DanglingAssessment (id not in
    /// `hypotheses`) or ValidatedWithoutEvidence. Never returns a partial load.
    static Registry from_json(const nlohmann::json& doc, const std::vector<Hypothesis>& hypotheses);

    void save(const std::filesystem::path& path) const;
    static Registry load(const std::filesystem::path& path, const std::vector<Hypothesis>& hypotheses);

    friend bool operator==(const Registry&, const Registry&) = default;

private:
    std::set<std::string, std::less<>> known_;
    std::map<std::string, std::vector<Assessment>, std::less<>> history_;
};

/// `<stem>.assessments.json` next to a map file.
std::filesystem::path assessments_path_for(const std::filesystem::path& map_path);

enum class SummaryRow { Validated, NotValidated, Refuted, Unassessed };
inline constexpr std::size_t kSummaryRows = 4;
/// Risk columns: L, M, H, and one for assessments without a risk.
inline constexpr std::size_t kRiskColumns = 4;
inline constexpr std::size_t kUnratedColumn = 3;

/// Hypothesis counts by (kind, status row, risk column). Every hypothesis
/// lands in exactly one cell.
struct SummaryTable {
    /// When set, Refuted is folded into NotValidated.
    bool fold_refuted = true;
    std::array<std::array<std::array<std::size_t, kRiskColumns>, kSummaryRows>, 3> counts{};

    std::size_t cell(HypothesisKind kind, SummaryRow row, std::size_t risk_column) const;
    std::size_t cell(HypothesisKind kind, SummaryRow row, RiskLevel risk) const;
    std::size_t row_total(HypothesisKind kind, SummaryRow row) const;
    std::size_t kind_total(HypothesisKind kind) const;
    std::size_t total() const;
};

SummaryTable summarize(const Registry& registry, const std::vector<Hypothesis>& hypotheses,
                       bool fold_refuted = true);

nlohmann::json summary_to_json(const SummaryTable& table);
/// Laid out as a status by risk table: status rows, kind x risk columns,
/// "-" for empty cells.
std::string summary_to_markdown(const SummaryTable& table);
std::string summary_to_csv(const SummaryTable& table);

}  // namespace hymap
