// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hymap {

enum class ValidationStatus { Unassessed, Validated, Refuted, NotValidated };
enum class RiskLevel { Low, Medium, High };

enum class EvidenceSource {
    OwnExperience,
    OfflineSurvey,
    OnlineSurvey,
    SimilarTools,
    ResemblingBusinessModels,
    ProductUsage,
    Interviews,
    Other,
};

std::string_view to_string(ValidationStatus status) noexcept;
std::string_view to_string(RiskLevel risk) noexcept;  // "L", "M", "H"
std::string_view to_string(EvidenceSource source) noexcept;
std::optional<ValidationStatus> parse_status(std::string_view text) noexcept;
/// Accepts L/M/H and low/medium/high, case-insensitively.
std::optional<RiskLevel> parse_risk(std::string_view text) noexcept;
std::optional<EvidenceSource> parse_evidence_source(std::string_view text) noexcept;

struct Evidence {
    EvidenceSource source = EvidenceSource::Other;
    std::string note;
    std::string date;  // free-form, ISO date recommended

    friend bool operator==(const Evidence&, const Evidence&) = default;
};

/// A founder's judgment of one hypothesis at one point in time.
struct Assessment {
    std::string hypothesis_id;
    ValidationStatus status = ValidationStatus::Unassessed;
    std::optional<RiskLevel> risk;
    std::vector<Evidence> evidence;
    std::string recorded_at;

    friend bool operator==(const Assessment&, const Assessment&) = default;
};

}  // namespace hymap
