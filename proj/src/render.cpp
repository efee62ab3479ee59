#include "siskit/render.hpp"
#include "siskit/derive.hpp"
#include "siskit/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace siskit {

std::optional<OutputFormat> parse_output_format(std::string_view text)
{
    if (text == "table")
        return OutputFormat::table;
    if (text == "csv")
        return OutputFormat::csv;
    if (text == "json")
        return OutputFormat::json;
    if (text == "markdown")
        return OutputFormat::markdown;
    return std::nullopt;
}

double round_half_up(double value, int decimals)
{
    const double scale = std::pow(10.0, decimals);
    const double scaled = std::abs(value) * scale;
    const double rounded = std::floor(scaled + 0.5 + 1e-9) / scale;
    return std::signbit(value) ? -rounded : rounded;
}

std::string format_fixed(double value, int decimals)
{
    double r = round_half_up(value, decimals);
    if (r == 0.0)
        r = 0.0; // drop the sign of -0
    return fmt::format("{:.{}f}", r, decimals);
}

namespace {

constexpr std::string_view kMinus = "−";
constexpr std::string_view kArrow = "→";

std::size_t display_width(std::string_view s)
{
    // Count UTF-8 code points; all glyphs used here are single-width.
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char ch) { return (static_cast<unsigned char>(ch) & 0xC0) != 0x80; }));
}

// Plain-text/markdown/csv grid with a left-aligned first column.
class Grid {
public:
    explicit Grid(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    bool empty() const { return rows_.empty(); }

    std::string text() const
    {
        std::vector<std::size_t> width(header_.size());
        for (std::size_t c = 0; c < header_.size(); ++c) {
            width[c] = display_width(header_[c]);
            for (const auto& row : rows_)
                width[c] = std::max(width[c], display_width(row[c]));
        }
        std::string out;
        auto line = [&](const std::vector<std::string>& cells) {
            std::string l;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                std::string pad(width[c] - display_width(cells[c]), ' ');
                if (c > 0)
                    l += "  ";
                l += c == 0 ? cells[c] + pad : pad + cells[c];
            }
            while (!l.empty() && l.back() == ' ')
                l.pop_back();
            out += l + "\n";
        };
        line(header_);
        std::size_t total = 0;
        for (std::size_t c = 0; c < width.size(); ++c)
            total += width[c] + (c > 0 ? 2 : 0);
        out += std::string(total, '-') + "\n";
        for (const auto& row : rows_)
            line(row);
        return out;
    }

    std::string markdown() const
    {
        std::string out = "| " + join(header_, " | ") + " |\n|";
        for (std::size_t c = 0; c < header_.size(); ++c)
            out += c == 0 ? "---|" : "---:|";
        out += "\n";
        for (const auto& row : rows_)
            out += "| " + join(row, " | ") + " |\n";
        return out;
    }

    std::string csv() const
    {
        std::string out = csv_line(header_);
        for (const auto& row : rows_)
            out += csv_line(row);
        return out;
    }

private:
    static std::string join(const std::vector<std::string>& cells, std::string_view sep)
    {
        std::string out;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0)
                out += sep;
            out += cells[i];
        }
        return out;
    }

    static std::string csv_line(const std::vector<std::string>& cells)
    {
        std::string out;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0)
                out += ',';
            const std::string& c = cells[i];
            if (c.find_first_of(",\"\n") != std::string::npos) {
                out += '"';
                for (char ch : c) {
                    if (ch == '"')
                        out += '"';
                    out += ch;
                }
                out += '"';
            } else {
                out += c;
            }
        }
        return out + "\n";
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string title(std::string_view text, const RenderOptions& options)
{
    if (options.format == OutputFormat::markdown)
        return fmt::format("### {}\n\n", text);
    if (options.color)
        return fmt::format("\x1b[1m{}\x1b[0m\n", text);
    return fmt::format("{}\n", text);
}

std::string emit(const Grid& grid, const RenderOptions& options)
{
    switch (options.format) {
    case OutputFormat::markdown: return grid.markdown();
    case OutputFormat::csv: return grid.csv();
    default: return grid.text();
    }
}

// Non-optimal alternatives in model order, then the theoretical optimal.
std::vector<AlternativeSummary> display_order(const std::vector<AlternativeSummary>& alts)
{
    std::vector<AlternativeSummary> out = alts;
    std::stable_partition(out.begin(), out.end(),
                          [](const AlternativeSummary& a) { return !a.is_theoretical_optimal; });
    return out;
}

std::string optional_fixed(const std::optional<double>& v, int decimals)
{
    return v ? format_fixed(*v, decimals) : std::string("n/a");
}

std::string effect_glyph(int effect)
{
    if (effect > 0)
        return "+";
    if (effect < 0)
        return std::string(kMinus);
    return "0";
}

} // namespace

std::string render_chain(const SynergyChain& chain)
{
    std::string out;
    for (std::size_t i = 0; i < chain.path.size(); ++i) {
        if (i > 0)
            out += fmt::format(" {} ", kArrow);
        out += chain.path[i];
    }
    out += " [";
    std::optional<Dimension> last;
    for (Dimension d : chain.path_dimensions) {
        if (last && *last == d)
            continue;
        if (last)
            out += kArrow;
        out += to_string(d);
        last = d;
    }
    return out + "]";
}

std::string render_scores(const ScoreReport& report, const RenderOptions& options)
{
    if (options.format == OutputFormat::json)
        return score_report_to_json(report).dump(2) + "\n";

    const auto alts = display_order(report.alternatives);
    const int dp = options.decimals;

    if (options.format == OutputFormat::csv) {
        Grid grid({"pair", "alternative", "raw_sis", "normalized_percent"});
        for (const auto& r : report.results) {
            for (const auto& a : alts) {
                auto n = r.normalized.find(a.id);
                grid.add({to_string(r.pair), a.id, format_fixed(r.raw.at(a.id), dp),
                          n == r.normalized.end() ? std::string() : format_fixed(n->second, dp)});
            }
        }
        return grid.csv();
    }

    if (report.results.empty())
        return options.format == OutputFormat::markdown ? "_No dimension pairs with effects._\n"
                                                        : "No dimension pairs with effects.\n";

    std::vector<std::string> header{"Alternative"};
    for (const auto& r : report.results)
        header.push_back(to_string(r.pair));

    Grid raw(header);
    Grid pct(header);
    bool normalized = false;
    for (const auto& a : alts) {
        std::vector<std::string> raw_row{a.name};
        std::vector<std::string> pct_row{a.name};
        for (const auto& r : report.results) {
            raw_row.push_back(format_fixed(r.raw.at(a.id), dp));
            auto n = r.normalized.find(a.id);
            if (n != r.normalized.end()) {
                normalized = true;
                pct_row.push_back(format_fixed(n->second, dp));
            } else {
                pct_row.push_back("n/a");
            }
        }
        raw.add(std::move(raw_row));
        pct.add(std::move(pct_row));
    }

    std::string out = title("Non-normalized SIS", options) + emit(raw, options);
    out += "\n";
    if (normalized)
        out += title("Normalized SIS (%)", options) + emit(pct, options);
    else
        out += "Normalized SIS (%) unavailable: no theoretical optimal alternative.\n";
    return out;
}

std::string render_priorities(const ScoreReport& report, const RenderOptions& options)
{
    const int dp = options.decimals;
    if (options.format == OutputFormat::json) {
        Json doc = score_report_to_json(report);
        Json out{{"priority_mode", doc["priority_mode"]}, {"scenario", doc["scenario"]},
                 {"priorities", doc["priorities"]}};
        return out.dump(2) + "\n";
    }
    if (options.format == OutputFormat::csv) {
        Grid grid({"qa_id", "name", "importance", "risk", "priority", "normalized_priority", "dimension"});
        for (const auto& p : report.priorities) {
            grid.add({p.qa_id, p.name, std::to_string(p.importance), std::to_string(p.risk), format_fixed(p.raw, dp),
                      format_fixed(p.normalized, dp), std::string(to_string(p.dimension))});
        }
        return grid.csv();
    }
    Grid grid({"QA", "I", "R", "P", "NP", "Dimension"});
    for (const auto& p : report.priorities) {
        grid.add({p.name, std::to_string(p.importance), std::to_string(p.risk), format_fixed(p.raw, dp),
                  format_fixed(p.normalized, dp), std::string(to_string(p.dimension))});
    }
    return emit(grid, options);
}

std::string render_whatif(const WhatIfReport& report, const AssessmentModel& model, const RenderOptions& options)
{
    if (options.format == OutputFormat::json)
        return whatif_report_to_json(report).dump(2) + "\n";

    const int dp = options.decimals;
    auto name_of = [&](const std::string& id) {
        const Alternative* alt = model.find_alternative(id);
        return alt ? alt->name : id;
    };

    if (options.format == OutputFormat::csv) {
        Grid grid({"pair", "alternative", "old_raw", "new_raw", "delta_raw", "old_percent", "new_percent",
                   "delta_percent"});
        for (const auto& e : report.entries) {
            auto opt = [&](const std::optional<double>& v) { return v ? format_fixed(*v, dp) : std::string(); };
            grid.add({to_string(e.pair), e.alternative_id, format_fixed(e.old_raw, dp), format_fixed(e.new_raw, dp),
                      format_fixed(e.delta_raw, dp), opt(e.old_percent), opt(e.new_percent), opt(e.delta_percent)});
        }
        return grid.csv();
    }

    Grid grid({"Pair", "Alternative", "Old SIS", "New SIS", "Delta SIS", "Old %", "New %", "Delta %"});
    for (const auto& e : report.entries) {
        grid.add({to_string(e.pair), name_of(e.alternative_id), format_fixed(e.old_raw, dp),
                  format_fixed(e.new_raw, dp), format_fixed(e.delta_raw, dp), optional_fixed(e.old_percent, dp),
                  optional_fixed(e.new_percent, dp), optional_fixed(e.delta_percent, dp)});
    }
    std::string out;
    if (report.entries.empty())
        out += "No dimension pairs with effects.\n";
    else
        out += title("What-if SIS changes", options) + emit(grid, options);

    if (!report.changed_chains.empty()) {
        out += "\n" + title("Synergy chains", options);
        for (const auto& c : report.changed_chains) {
            out += fmt::format("{} {} ({}): {}\n", options.format == OutputFormat::markdown ? "-" : " ",
                               c.created ? "created" : "broken", name_of(c.alternative_id), render_chain(c.chain));
        }
    }
    return out;
}

std::string render_report(const AssessmentModel& model, const ScoreOptions& options, int decimals)
{
    RenderOptions md{OutputFormat::markdown, decimals, false};
    std::string out = "# Sustainability impact report\n\n";
    out += fmt::format("Priority mode: {}. Weights: importance {:g}, risk {:g}.", to_string(options.mode),
                       model.weights.importance_weight, model.weights.risk_weight);
    if (options.scenario)
        out += fmt::format(" Scenario: `{}`.", *options.scenario);
    out += "\n\n";

    ScoreOptions scoring = options;
    bool normalized = options.normalize && model.theoretical_optimal() != nullptr;
    scoring.normalize = normalized;
    ScoreReport scores = build_score_report(model, scoring);

    out += "## Quality attribute priorities\n\n" + render_priorities(scores, md) + "\n";

    out += "## Effect matrices\n\n";
    for (const auto& alt : model.alternatives) {
        out += fmt::format("### {}{}\n\n", alt.name, alt.is_theoretical_optimal ? " (theoretical optimal)" : "");
        auto mats = alternative_matrices(alt, model);
        if (mats.empty()) {
            out += "_no effects identified_\n\n";
            continue;
        }
        for (const auto& m : mats) {
            out += fmt::format("#### {}\n\n", to_string(m.pair()));
            std::vector<std::string> header{fmt::format("{} {} {}", to_string(m.dim_from), kArrow,
                                                        to_string(m.dim_to))};
            header.insert(header.end(), m.col_qas.begin(), m.col_qas.end());
            Grid grid(header);
            for (std::size_t r = 0; r < m.rows(); ++r) {
                std::vector<std::string> row{m.row_qas[r]};
                for (std::size_t c = 0; c < m.cols(); ++c)
                    row.push_back(effect_glyph(m.at(r, c).effect));
                grid.add(std::move(row));
            }
            out += grid.markdown() + "\n";
        }
    }

    out += "## Sustainability impact scores\n\n" + render_scores(scores, md) + "\n";
    if (!normalized)
        out += "No theoretical optimal alternative is flagged, so only raw scores are shown.\n\n";
    out += "Raw SIS has no lower bound. A percentage only places an alternative between the weakest evaluated "
           "alternative (0%) and the theoretical optimal (100%); how poor a low raw score is remains open.\n\n";

    out += "## Trade-offs\n\n";
    for (const auto& alt : model.alternatives) {
        out += fmt::format("### {}\n\n", alt.name);
        auto mats = alternative_matrices(alt, model);
        for (auto scope : {TradeoffScope::within_dimension, TradeoffScope::across_dimensions}) {
            out += scope == TradeoffScope::within_dimension ? "Within a dimension:\n\n" : "Across dimensions:\n\n";
            auto records = find_tradeoffs(mats, scope);
            if (records.empty())
                out += "- none\n";
            for (const auto& t : records) {
                out += fmt::format("- `{}` {} `{}` ({}{})\n", t.from_qa, kArrow, t.to_qa, to_string(t.pair),
                                   t.impact_level ? fmt::format(", {}", to_string(*t.impact_level)) : "");
            }
            out += "\n";
        }
    }

    out += "## Synergy chains\n\n";
    for (const auto& alt : model.alternatives) {
        out += fmt::format("### {}\n\n", alt.name);
        auto chains = find_synergy_chains(effect_graph(alt, model), kReportedChainMinLength);
        if (chains.empty())
            out += "- none\n";
        for (const auto& c : chains)
            out += "- " + render_chain(c) + "\n";
        out += "\n";
    }

    out += "## Most affected quality attributes\n\n";
    for (const auto& alt : model.alternatives) {
        out += fmt::format("### {}\n\n", alt.name);
        auto ranking = most_affected_qas(alt, model);
        const auto& neg = ranking.by_negative;
        const auto& pos = ranking.by_positive;
        if (neg.empty() || (neg.front().negative_in == 0 && pos.front().positive_in == 0)) {
            out += "_no effects identified_\n\n";
            continue;
        }
        if (neg.front().negative_in > 0)
            out += fmt::format("- Most negatively affected: `{}` ({} negative)\n", neg.front().qa_id,
                               neg.front().negative_in);
        if (pos.front().positive_in > 0)
            out += fmt::format("- Most positively affected: `{}` ({} positive)\n", pos.front().qa_id,
                               pos.front().positive_in);
        out += "\n";
        Grid grid({"QA", "+ in", fmt::format("{} in", kMinus)});
        for (const auto& c : neg) {
            if (c.positive_in + c.negative_in > 0)
                grid.add({c.qa_id, std::to_string(c.positive_in), std::to_string(c.negative_in)});
        }
        out += grid.markdown() + "\n";
    }
    return out;
}

} // namespace siskit
