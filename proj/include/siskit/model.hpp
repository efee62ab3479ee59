#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace siskit {

/// Sustainability dimension. Codes are "Ec", "En", "S" and "T".
enum class Dimension { Ec, En, S, T };

inline constexpr std::array<Dimension, 4> kAllDimensions{
    Dimension::Ec, Dimension::En, Dimension::S, Dimension::T};

std::string_view to_string(Dimension d);
std::optional<Dimension> parse_dimension(std::string_view code);

enum class ImpactLevel { direct, enabling, systemic };

std::string_view to_string(ImpactLevel level);
std::optional<ImpactLevel> parse_impact_level(std::string_view text);

/// Ordered (row dimension, column dimension) pair; (T, Ec) and (Ec, T) are distinct.
struct DimensionPair {
    Dimension from = Dimension::T;
    Dimension to = Dimension::T;

    bool operator==(const DimensionPair&) const = default;
};

std::string to_string(DimensionPair pair); // "T-Ec"
std::optional<DimensionPair> parse_dimension_pair(std::string_view label);

/// Presentation order: T-T, T-Ec, T-En, T-S, then the remaining pairs by label.
bool pair_precedes(DimensionPair a, DimensionPair b);

struct PairOrder {
    bool operator()(DimensionPair a, DimensionPair b) const { return pair_precedes(a, b); }
};

inline constexpr int kMinLevel = 1;
inline constexpr int kMaxLevel = 3;
inline constexpr std::size_t kMaxIdLength = 128;

struct QualityAttribute {
    std::string id;
    std::string name;
    std::string definition;
    Dimension dimension = Dimension::T;
    int importance = kMinLevel; // Low=1, Medium=2, High=3
    int risk = kMinLevel;
    // Explicit ranking-style priority. When set it replaces the importance/risk
    // weighted sum as the QA's raw priority.
    std::optional<double> priority;

    bool operator==(const QualityAttribute&) const = default;
};

struct WeightConfig {
    double importance_weight = 0.5;
    double risk_weight = 0.5;

    bool operator==(const WeightConfig&) const = default;
};

struct Scenario {
    std::string id;
    std::string description;

    bool operator==(const Scenario&) const = default;
};

struct UtilityCell {
    int importance = kMinLevel;
    int risk = kMinLevel;

    bool operator==(const UtilityCell&) const = default;
};

/// Many-to-many QA/scenario grid. Absent cells fall back to the QA's own levels.
struct UtilityMatrix {
    std::vector<std::string> rows;    // QA ids
    std::vector<std::string> columns; // scenario ids
    std::map<std::pair<std::string, std::string>, UtilityCell> cells;

    bool operator==(const UtilityMatrix&) const = default;
};

struct EffectCell {
    int effect = 0; // -1, 0 or +1
    std::optional<ImpactLevel> impact_level;
    std::optional<std::string> rationale;

    bool operator==(const EffectCell&) const = default;
};

/// Effects of the row QAs (all in dim_from) on the column QAs (all in dim_to).
struct EffectMatrix {
    Dimension dim_from = Dimension::T;
    Dimension dim_to = Dimension::T;
    std::vector<std::string> row_qas;
    std::vector<std::string> col_qas;
    std::vector<EffectCell> cells; // row-major, row_qas.size() * col_qas.size()

    EffectMatrix() = default;
    EffectMatrix(Dimension from, Dimension to, std::vector<std::string> rows,
                 std::vector<std::string> cols);

    DimensionPair pair() const { return {dim_from, dim_to}; }
    std::size_t rows() const { return row_qas.size(); }
    std::size_t cols() const { return col_qas.size(); }

    EffectCell& at(std::size_t r, std::size_t c) { return cells[r * col_qas.size() + c]; }
    const EffectCell& at(std::size_t r, std::size_t c) const { return cells[r * col_qas.size() + c]; }

    std::optional<std::size_t> row_index(std::string_view qa_id) const;
    std::optional<std::size_t> col_index(std::string_view qa_id) const;

    bool all_zero() const;

    bool operator==(const EffectMatrix&) const = default;
};

struct DecisionMapNode {
    std::string qa_id;
    Dimension dimension = Dimension::T;
    std::optional<ImpactLevel> impact_level;

    bool operator==(const DecisionMapNode&) const = default;
};

struct DecisionMapEdge {
    std::string from;
    std::string to;
    int sign = 1; // +1 or -1
    std::optional<ImpactLevel> impact_level;

    bool operator==(const DecisionMapEdge&) const = default;
};

struct DecisionMap {
    std::vector<DecisionMapNode> nodes;
    std::vector<DecisionMapEdge> edges;

    const DecisionMapNode* find_node(std::string_view qa_id) const;

    bool operator==(const DecisionMap&) const = default;
};

struct Alternative {
    std::string id;
    std::string name;
    std::string description;
    std::optional<DecisionMap> dmap;
    std::optional<std::vector<EffectMatrix>> matrices;
    bool is_theoretical_optimal = false;

    bool operator==(const Alternative&) const = default;
};

inline constexpr std::string_view kSchemaVersion = "1";

struct AssessmentModel {
    std::vector<QualityAttribute> qas;
    WeightConfig weights;
    std::vector<Scenario> scenarios;
    std::optional<UtilityMatrix> utility_matrix;
    std::vector<Alternative> alternatives;

    const QualityAttribute* find_qa(std::string_view id) const;
    const Alternative* find_alternative(std::string_view id) const;
    Alternative* find_alternative(std::string_view id);
    const Alternative* theoretical_optimal() const;

    /// QA ids of one dimension, in model order.
    std::vector<std::string> qa_ids_in(Dimension d) const;

    bool operator==(const AssessmentModel&) const = default;
};

} // namespace siskit
