#pragma once

#include "siskit/analysis.hpp"
#include "siskit/model_io.hpp"
#include "siskit/scoring.hpp"
#include "siskit/whatif.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace siskit {

struct AlternativeSummary {
    std::string id;
    std::string name;
    bool is_theoretical_optimal = false;

    bool operator==(const AlternativeSummary&) const = default;
};

struct PriorityRow {
    std::string qa_id;
    std::string name;
    Dimension dimension = Dimension::T;
    int importance = kMinLevel; // as resolved for the scenario
    int risk = kMinLevel;
    double raw = 0.0;
    double normalized = 0.0;

    bool operator==(const PriorityRow&) const = default;
};

/// Everything needed to render priority and SIS tables without the model.
struct ScoreReport {
    PriorityMode mode = PriorityMode::normalized;
    std::optional<std::string> scenario;
    std::vector<AlternativeSummary> alternatives; // model order
    std::vector<PriorityRow> priorities;          // model order
    std::vector<SisResult> results;               // presentation order

    bool operator==(const ScoreReport&) const = default;
};

ScoreReport build_score_report(const AssessmentModel& model, const ScoreOptions& options);
std::vector<PriorityRow> priority_rows(const AssessmentModel& model, const std::optional<std::string>& scenario);

Json score_report_to_json(const ScoreReport& report);
/// Throws Error{schema} on malformed documents.
ScoreReport score_report_from_json(const Json& doc);

Json sis_result_to_json(const SisResult& result);

/// Accepts {"overrides": [...]}; blank text is the empty patch.
WhatIfPatch parse_patch(std::string_view text);
WhatIfPatch patch_from_json(const Json& doc);
CellOverride override_from_json(const Json& obj, const std::string& path = "override");
Json override_to_json(const CellOverride& o);
Json patch_to_json(const WhatIfPatch& patch);

Json whatif_entry_to_json(const WhatIfEntry& e);
Json whatif_report_to_json(const WhatIfReport& report);

Json chain_to_json(const SynergyChain& chain);

/// Trade-offs, synergy chains (length >= 2) and affected-QA rankings per alternative.
Json analysis_to_json(const AssessmentModel& model);

/// Effective matrices per alternative with row/column priorities.
Json matrices_to_json(const AssessmentModel& model, const PrioritySet& priorities);

} // namespace siskit
