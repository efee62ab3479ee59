#pragma once

#include "siskit/analysis.hpp"
#include "siskit/model.hpp"
#include "siskit/scoring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace siskit {

struct CellOverride {
    std::string alternative_id;
    Dimension dim_from = Dimension::T;
    Dimension dim_to = Dimension::T;
    std::string row_qa;
    std::string col_qa;
    int new_effect = 0;

    DimensionPair pair() const { return {dim_from, dim_to}; }
    bool same_cell(const CellOverride& other) const;
    std::string describe() const; // "alt T-Ec[row -> col]"

    bool operator==(const CellOverride&) const = default;
};

struct WhatIfPatch {
    std::vector<CellOverride> overrides;

    /// Replaces an existing override of the same cell, else appends.
    void merge(const CellOverride& override);

    bool operator==(const WhatIfPatch&) const = default;
};

struct WhatIfOptions {
    ScoreOptions score;
    bool allow_optimal_edit = false;
};

struct WhatIfEntry {
    DimensionPair pair;
    std::string alternative_id;
    double old_raw = 0.0;
    double new_raw = 0.0;
    std::optional<double> old_percent;
    std::optional<double> new_percent;
    double delta_raw = 0.0;
    std::optional<double> delta_percent;
};

struct ChainChange {
    std::string alternative_id;
    bool created = false; // false: broken
    SynergyChain chain;
};

struct WhatIfReport {
    std::vector<WhatIfEntry> entries; // presentation pair order, then model alternative order
    std::vector<ChainChange> changed_chains;
};

struct WhatIfOutcome {
    AssessmentModel model; // patched copy
    std::vector<SisResult> baseline;
    std::vector<SisResult> updated;
    WhatIfReport report;
};

/// Minimum chain length considered when diffing synergy chains.
inline constexpr std::size_t kReportedChainMinLength = 2;

/// Checks every override against the model and returns the patched copy.
/// Patched alternatives carry explicit matrices (derived from their DMap when
/// needed); everything else is copied unchanged.
///
/// Throws Error{unknown_cell}, Error{invalid_effect}, Error{duplicate_override}
/// or Error{optimal_readonly}.
AssessmentModel apply_patch(const AssessmentModel& model, const WhatIfPatch& patch, bool allow_optimal_edit = false);

/// Applies the patch and reports old/new raw and normalized SIS per pair and
/// alternative. Raw SIS of touched cells is updated incrementally; normalized
/// values are recomputed across each affected pair. The input is not modified.
WhatIfOutcome apply_whatif(const AssessmentModel& model, const WhatIfPatch& patch, const WhatIfOptions& options = {});

} // namespace siskit
