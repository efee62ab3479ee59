#pragma once

#include "siskit/document.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace siskit {

enum class OutputFormat { table, csv, json, markdown };

std::optional<OutputFormat> parse_output_format(std::string_view text);

struct RenderOptions {
    OutputFormat format = OutputFormat::table;
    int decimals = 2; // 0..6
    bool color = false;
};

/// Rounds half away from zero at the given number of decimals. Values within
/// 1e-9 (in units of the last kept digit) of a half are treated as the half,
/// so 0.775 computed as 0.77499999999999991 still becomes 0.78.
double round_half_up(double value, int decimals);

/// Fixed-point text of round_half_up(value, decimals); never prints "-0".
std::string format_fixed(double value, int decimals);

/// "a → b → c [T→S→Ec]"; consecutive equal dimensions are collapsed.
std::string render_chain(const SynergyChain& chain);

/// Two blocks: non-normalized SIS then normalized SIS (%), rows are
/// alternatives with the theoretical optimal last, columns are pairs.
std::string render_scores(const ScoreReport& report, const RenderOptions& options);

/// Columns QA, I, R, P, NP, dimension.
std::string render_priorities(const ScoreReport& report, const RenderOptions& options);

std::string render_whatif(const WhatIfReport& report, const AssessmentModel& model, const RenderOptions& options);

/// Markdown report: priorities, effect grids, SIS tables, trade-offs,
/// synergy chains and most-affected QAs.
std::string render_report(const AssessmentModel& model, const ScoreOptions& options, int decimals);

} // namespace siskit
