#include "siskit/model.hpp"
#include "siskit/error.hpp"

#include <algorithm>

namespace siskit {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::syntax: return "syntax_error";
    case ErrorCode::schema: return "schema_violation";
    case ErrorCode::dangling_reference: return "dangling_reference";
    case ErrorCode::duplicate_id: return "duplicate_id";
    case ErrorCode::invalid_model: return "invalid_model";
    case ErrorCode::level_out_of_range: return "level_out_of_range";
    case ErrorCode::empty_input: return "empty_input";
    case ErrorCode::missing_priority: return "missing_priority";
    case ErrorCode::wrong_dimension: return "wrong_dimension";
    case ErrorCode::unknown_scenario: return "unknown_scenario";
    case ErrorCode::optimal_not_optimal: return "optimal_not_optimal";
    case ErrorCode::no_theoretical_optimal: return "no_theoretical_optimal";
    case ErrorCode::unknown_cell: return "unknown_cell";
    case ErrorCode::invalid_effect: return "invalid_effect";
    case ErrorCode::duplicate_override: return "duplicate_override";
    case ErrorCode::optimal_readonly: return "optimal_readonly";
    case ErrorCode::unknown_session: return "unknown_session";
    case ErrorCode::session_expired: return "session_expired";
    case ErrorCode::io: return "io_error";
    case ErrorCode::internal: return "internal_error";
    }
    return "internal_error";
}

std::string_view to_string(Dimension d)
{
    switch (d) {
    case Dimension::Ec: return "Ec";
    case Dimension::En: return "En";
    case Dimension::S: return "S";
    case Dimension::T: return "T";
    }
    return "?";
}

std::optional<Dimension> parse_dimension(std::string_view code)
{
    for (Dimension d : kAllDimensions) {
        if (to_string(d) == code)
            return d;
    }
    return std::nullopt;
}

std::string_view to_string(ImpactLevel level)
{
    switch (level) {
    case ImpactLevel::direct: return "direct";
    case ImpactLevel::enabling: return "enabling";
    case ImpactLevel::systemic: return "systemic";
    }
    return "?";
}

std::optional<ImpactLevel> parse_impact_level(std::string_view text)
{
    for (auto level : {ImpactLevel::direct, ImpactLevel::enabling, ImpactLevel::systemic}) {
        if (to_string(level) == text)
            return level;
    }
    return std::nullopt;
}

std::string to_string(DimensionPair pair)
{
    std::string label(to_string(pair.from));
    label += '-';
    label += to_string(pair.to);
    return label;
}

std::optional<DimensionPair> parse_dimension_pair(std::string_view label)
{
    auto dash = label.find('-');
    if (dash == std::string_view::npos)
        return std::nullopt;
    auto from = parse_dimension(label.substr(0, dash));
    auto to = parse_dimension(label.substr(dash + 1));
    if (!from || !to)
        return std::nullopt;
    return DimensionPair{*from, *to};
}

namespace {

int leading_rank(DimensionPair p)
{
    if (p.from != Dimension::T)
        return 4;
    switch (p.to) {
    case Dimension::T: return 0;
    case Dimension::Ec: return 1;
    case Dimension::En: return 2;
    case Dimension::S: return 3;
    }
    return 4;
}

} // namespace

bool pair_precedes(DimensionPair a, DimensionPair b)
{
    int ra = leading_rank(a);
    int rb = leading_rank(b);
    if (ra != rb)
        return ra < rb;
    if (ra < 4)
        return false;
    return to_string(a) < to_string(b);
}

EffectMatrix::EffectMatrix(Dimension from, Dimension to, std::vector<std::string> rows,
                           std::vector<std::string> cols)
    : dim_from(from), dim_to(to), row_qas(std::move(rows)), col_qas(std::move(cols)),
      cells(row_qas.size() * col_qas.size())
{
}

std::optional<std::size_t> EffectMatrix::row_index(std::string_view qa_id) const
{
    auto it = std::find(row_qas.begin(), row_qas.end(), qa_id);
    if (it == row_qas.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - row_qas.begin());
}

std::optional<std::size_t> EffectMatrix::col_index(std::string_view qa_id) const
{
    auto it = std::find(col_qas.begin(), col_qas.end(), qa_id);
    if (it == col_qas.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - col_qas.begin());
}

bool EffectMatrix::all_zero() const
{
    return std::all_of(cells.begin(), cells.end(), [](const EffectCell& c) { return c.effect == 0; });
}

const DecisionMapNode* DecisionMap::find_node(std::string_view qa_id) const
{
    for (const auto& n : nodes) {
        if (n.qa_id == qa_id)
            return &n;
    }
    return nullptr;
}

const QualityAttribute* AssessmentModel::find_qa(std::string_view id) const
{
    for (const auto& qa : qas) {
        if (qa.id == id)
            return &qa;
    }
    return nullptr;
}

const Alternative* AssessmentModel::find_alternative(std::string_view id) const
{
    for (const auto& alt : alternatives) {
        if (alt.id == id)
            return &alt;
    }
    return nullptr;
}

Alternative* AssessmentModel::find_alternative(std::string_view id)
{
    for (auto& alt : alternatives) {
        if (alt.id == id)
            return &alt;
    }
    return nullptr;
}

const Alternative* AssessmentModel::theoretical_optimal() const
{
    for (const auto& alt : alternatives) {
        if (alt.is_theoretical_optimal)
            return &alt;
    }
    return nullptr;
}

std::vector<std::string> AssessmentModel::qa_ids_in(Dimension d) const
{
    std::vector<std::string> ids;
    for (const auto& qa : qas) {
        if (qa.dimension == d)
            ids.push_back(qa.id);
    }
    return ids;
}

} // namespace siskit
