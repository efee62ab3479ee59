#include "siskit/scoring.hpp"
#include "siskit/derive.hpp"
#include "siskit/error.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace siskit {

std::string_view to_string(PriorityMode mode)
{
    return mode == PriorityMode::raw ? "raw" : "normalized";
}

double PrioritySet::value(const std::string& qa_id, PriorityMode mode) const
{
    auto it = entries.find(qa_id);
    if (it == entries.end())
        throw Error(ErrorCode::missing_priority, fmt::format("no priority for QA '{}'", qa_id), qa_id);
    return mode == PriorityMode::raw ? it->second.raw : it->second.normalized;
}

double compute_priority(int importance, int risk, const WeightConfig& weights)
{
    auto check = [](int level, std::string_view what) {
        if (level < kMinLevel || level > kMaxLevel) {
            throw Error(ErrorCode::level_out_of_range,
                        fmt::format("{} level {} out of range (expected 1, 2 or 3)", what, level));
        }
    };
    check(importance, "importance");
    check(risk, "risk");
    return weights.importance_weight * importance + weights.risk_weight * risk;
}

PrioritySet normalize_priorities(const std::map<std::string, double>& raw)
{
    if (raw.empty())
        throw Error(ErrorCode::empty_input, "cannot normalize an empty priority set");

    auto [lo_it, hi_it] = std::minmax_element(raw.begin(), raw.end(),
                                              [](const auto& a, const auto& b) { return a.second < b.second; });
    const double lo = lo_it->second;
    const double hi = hi_it->second;

    PrioritySet set;
    for (const auto& [id, p] : raw) {
        double np = 1.0;
        if (hi > lo)
            np = kMinNormalizedPriority + (1.0 - kMinNormalizedPriority) * (p - lo) / (hi - lo);
        set.entries.emplace(id, PriorityEntry{p, np});
    }
    return set;
}

std::map<std::string, double> raw_priorities(const AssessmentModel& model,
                                             const std::optional<std::string>& scenario)
{
    if (scenario) {
        const UtilityMatrix* um = model.utility_matrix ? &*model.utility_matrix : nullptr;
        if (!um || std::find(um->columns.begin(), um->columns.end(), *scenario) == um->columns.end()) {
            throw Error(ErrorCode::unknown_scenario,
                        fmt::format("scenario '{}' is not covered by the utility matrix", *scenario),
                        *scenario);
        }
    }

    std::map<std::string, double> raw;
    for (const auto& qa : model.qas) {
        const UtilityCell* cell = nullptr;
        if (scenario) {
            auto it = model.utility_matrix->cells.find({qa.id, *scenario});
            if (it != model.utility_matrix->cells.end())
                cell = &it->second;
        }
        double p;
        if (cell)
            p = compute_priority(cell->importance, cell->risk, model.weights);
        else if (qa.priority)
            p = *qa.priority;
        else
            p = compute_priority(qa.importance, qa.risk, model.weights);
        raw.emplace(qa.id, p);
    }
    return raw;
}

PrioritySet resolve_priorities(const AssessmentModel& model, const std::optional<std::string>& scenario)
{
    return normalize_priorities(raw_priorities(model, scenario));
}

double compute_sis(const EffectMatrix& matrix, const PrioritySet& priorities, PriorityMode mode)
{
    std::vector<double> row_p(matrix.rows());
    std::vector<double> col_p(matrix.cols());
    for (std::size_t r = 0; r < matrix.rows(); ++r)
        row_p[r] = priorities.value(matrix.row_qas[r], mode);
    for (std::size_t c = 0; c < matrix.cols(); ++c)
        col_p[c] = priorities.value(matrix.col_qas[c], mode);

    double sis = 0.0;
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        for (std::size_t c = 0; c < matrix.cols(); ++c) {
            int e = matrix.at(r, c).effect;
            if (e != 0)
                sis += (row_p[r] + col_p[c]) * e;
        }
    }
    return sis;
}

double legacy_sis_equivalence_check(const EffectMatrix& matrix, const PrioritySet& priorities, PriorityMode mode)
{
    if (matrix.dim_from != Dimension::T) {
        throw Error(ErrorCode::wrong_dimension,
                    fmt::format("legacy score is only defined for technical rows, got {}",
                                to_string(matrix.pair())));
    }
    return compute_sis(matrix, priorities, mode);
}

std::map<std::string, double> compute_normalized_sis(const std::map<std::string, double>& results,
                                                     double theoretical_optimal_sis)
{
    if (results.empty())
        throw Error(ErrorCode::empty_input, "no alternatives to normalize");

    double lo = results.begin()->second;
    for (const auto& [id, sis] : results) {
        if (sis > theoretical_optimal_sis + kSisTolerance) {
            throw Error(ErrorCode::optimal_not_optimal,
                        fmt::format("theoretical optimal is not optimal: alternative '{}' scores {} above {}",
                                    id, sis, theoretical_optimal_sis),
                        id);
        }
        lo = std::min(lo, sis);
    }

    const double span = theoretical_optimal_sis - lo;
    std::map<std::string, double> pct;
    for (const auto& [id, sis] : results)
        pct.emplace(id, span <= kSisTolerance ? 100.0 : (sis - lo) / span * 100.0);
    return pct;
}

void normalize_result(SisResult& result, const AssessmentModel& model)
{
    const Alternative* optimal = model.theoretical_optimal();
    if (!optimal) {
        throw Error(ErrorCode::no_theoretical_optimal,
                    "no alternative is flagged as theoretical optimal; set \"is_theoretical_optimal\": true on one "
                    "alternative or disable normalization");
    }

    std::map<std::string, double> others;
    for (const auto& [id, sis] : result.raw) {
        if (id != optimal->id)
            others.emplace(id, sis);
    }

    const double to_sis = result.raw.count(optimal->id) ? result.raw.at(optimal->id) : 0.0;
    result.theoretical_optimal_sis = to_sis;
    result.normalized.clear();
    if (!others.empty()) {
        try {
            result.normalized = compute_normalized_sis(others, to_sis);
        } catch (const Error& e) {
            throw Error(e.code(), fmt::format("{}: {}", to_string(result.pair), e.what()), e.path());
        }
    }
    result.normalized[optimal->id] = 100.0;
}

std::vector<SisResult> score_model(const AssessmentModel& model, const ScoreOptions& options)
{
    const PrioritySet priorities = resolve_priorities(model, options.scenario);

    std::map<DimensionPair, std::map<std::string, double>, PairOrder> by_pair;
    for (const auto& alt : model.alternatives) {
        for (const auto& m : alternative_matrices(alt, model))
            by_pair[m.pair()][alt.id] += compute_sis(m, priorities, options.mode);
    }

    std::vector<SisResult> results;
    for (auto& [pair, scores] : by_pair) {
        SisResult r;
        r.pair = pair;
        for (const auto& alt : model.alternatives)
            r.raw[alt.id] = scores.count(alt.id) ? scores.at(alt.id) : 0.0;
        if (options.normalize)
            normalize_result(r, model);
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace siskit
