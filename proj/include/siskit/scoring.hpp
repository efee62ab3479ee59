#pragma once

#include "siskit/model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace siskit {

/// Lower end of the normalized priority range; the upper end is 1.
inline constexpr double kMinNormalizedPriority = 0.1;

/// Absolute slack used when comparing SIS values that were summed in
/// different orders (theoretical-optimal check, degenerate normalization).
inline constexpr double kSisTolerance = 1e-9;

enum class PriorityMode {
    normalized, // min-max normalized priorities in [0.1, 1]
    raw,        // weighted-sum (or explicit) priorities as computed
};

std::string_view to_string(PriorityMode mode);

struct PriorityEntry {
    double raw = 0.0;
    double normalized = 0.0;

    bool operator==(const PriorityEntry&) const = default;
};

struct PrioritySet {
    std::map<std::string, PriorityEntry> entries;

    /// Throws Error{missing_priority} for unknown ids.
    double value(const std::string& qa_id, PriorityMode mode) const;
    bool contains(const std::string& qa_id) const { return entries.count(qa_id) != 0; }

    bool operator==(const PrioritySet&) const = default;
};

/// Weighted sum w_I * importance + w_R * risk.
/// Throws Error{level_out_of_range} unless both levels are in {1, 2, 3}.
double compute_priority(int importance, int risk, const WeightConfig& weights);

/// Min-max maps raw priorities onto [0.1, 1]. When every raw value is equal
/// each entry normalizes to 1. Throws Error{empty_input} for an empty map.
PrioritySet normalize_priorities(const std::map<std::string, double>& raw);

/// Raw priority per QA. With a scenario, utility-matrix cells override the
/// QA's own importance/risk; otherwise an explicit QA priority wins over the
/// weighted sum. Throws Error{unknown_scenario} if the scenario is not a
/// utility-matrix column.
std::map<std::string, double> raw_priorities(const AssessmentModel& model,
                                             const std::optional<std::string>& scenario = std::nullopt);

PrioritySet resolve_priorities(const AssessmentModel& model,
                               const std::optional<std::string>& scenario = std::nullopt);

/// Sum over all cells of (P(row QA) + P(col QA)) * effect.
/// Throws Error{missing_priority} if a row or column QA has no priority.
double compute_sis(const EffectMatrix& matrix, const PrioritySet& priorities,
                   PriorityMode mode = PriorityMode::normalized);

/// The technical-dimension form of the score; identical to compute_sis but
/// only defined for matrices whose rows are technical QAs.
/// Throws Error{wrong_dimension} when dim_from is not T.
double legacy_sis_equivalence_check(const EffectMatrix& matrix, const PrioritySet& priorities,
                                    PriorityMode mode = PriorityMode::normalized);

/// (sis - min) / (TO - min) * 100 where min ranges over the given
/// (non-optimal) alternatives. TO == min maps everything to 100.
/// Throws Error{empty_input} for no alternatives and
/// Error{optimal_not_optimal} when an alternative exceeds TO.
std::map<std::string, double> compute_normalized_sis(const std::map<std::string, double>& results,
                                                     double theoretical_optimal_sis);

struct SisResult {
    DimensionPair pair;
    std::map<std::string, double> raw;        // every alternative, TO included
    std::map<std::string, double> normalized; // percent; empty when not normalized
    std::optional<double> theoretical_optimal_sis;

    bool operator==(const SisResult&) const = default;
};

struct ScoreOptions {
    std::optional<std::string> scenario;
    PriorityMode mode = PriorityMode::normalized;
    bool normalize = true;
};

/// Scores every dimension pair that appears in any alternative. Alternatives
/// lacking a pair score 0 for it. Results are in presentation order.
///
/// Throws Error{no_theoretical_optimal} when normalization is requested,
/// there is something to normalize and no alternative is flagged optimal.
std::vector<SisResult> score_model(const AssessmentModel& model, const ScoreOptions& options = {});

/// Per-pair normalization step of score_model, exposed for incremental callers.
void normalize_result(SisResult& result, const AssessmentModel& model);

} // namespace siskit
