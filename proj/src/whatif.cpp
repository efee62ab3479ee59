#include "siskit/whatif.hpp"
#include "siskit/derive.hpp"
#include "siskit/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>

namespace siskit {

bool CellOverride::same_cell(const CellOverride& other) const
{
    return alternative_id == other.alternative_id && dim_from == other.dim_from && dim_to == other.dim_to &&
           row_qa == other.row_qa && col_qa == other.col_qa;
}

std::string CellOverride::describe() const
{
    return fmt::format("{} {}[{} -> {}]", alternative_id, to_string(pair()), row_qa, col_qa);
}

void WhatIfPatch::merge(const CellOverride& override)
{
    for (auto& existing : overrides) {
        if (existing.same_cell(override)) {
            existing.new_effect = override.new_effect;
            return;
        }
    }
    overrides.push_back(override);
}

namespace {

struct CellRef {
    std::size_t matrix = 0;
    std::size_t row = 0;
    std::size_t col = 0;
};

// Matrices of each alternative touched so far, keyed by alternative id.
using MatrixCache = std::map<std::string, std::vector<EffectMatrix>>;

CellRef locate(const AssessmentModel& model, const CellOverride& o, bool allow_optimal_edit, MatrixCache& cache)
{
    const Alternative* alt = model.find_alternative(o.alternative_id);
    if (!alt)
        throw Error(ErrorCode::unknown_cell, fmt::format("unknown alternative in {}", o.describe()), o.describe());
    if (alt->is_theoretical_optimal && !allow_optimal_edit) {
        throw Error(ErrorCode::optimal_readonly,
                    fmt::format("{} targets the theoretical optimal, which is read-only without "
                                "--allow-optimal-edit",
                                o.describe()),
                    o.describe());
    }
    if (o.new_effect < -1 || o.new_effect > 1) {
        throw Error(ErrorCode::invalid_effect,
                    fmt::format("effect {} for {} is not one of -1, 0, +1", o.new_effect, o.describe()), o.describe());
    }

    auto it = cache.find(alt->id);
    if (it == cache.end())
        it = cache.emplace(alt->id, alternative_matrices(*alt, model)).first;
    const auto& mats = it->second;

    for (std::size_t k = 0; k < mats.size(); ++k) {
        if (mats[k].pair() != o.pair())
            continue;
        auto r = mats[k].row_index(o.row_qa);
        auto c = mats[k].col_index(o.col_qa);
        if (!r || !c)
            break;
        if (o.dim_from == o.dim_to && o.row_qa == o.col_qa && o.new_effect != 0) {
            throw Error(ErrorCode::invalid_effect,
                        fmt::format("{} is a diagonal cell and must stay 0", o.describe()), o.describe());
        }
        return {k, *r, *c};
    }
    throw Error(ErrorCode::unknown_cell, fmt::format("no such cell: {}", o.describe()), o.describe());
}

void reject_duplicates(const WhatIfPatch& patch)
{
    for (std::size_t i = 0; i < patch.overrides.size(); ++i) {
        for (std::size_t j = i + 1; j < patch.overrides.size(); ++j) {
            if (patch.overrides[i].same_cell(patch.overrides[j])) {
                throw Error(ErrorCode::duplicate_override,
                            fmt::format("cell {} is overridden twice", patch.overrides[i].describe()),
                            patch.overrides[i].describe());
            }
        }
    }
}

std::vector<ChainChange> diff_chains(const std::string& alt_id, const DecisionMap& before, const DecisionMap& after)
{
    auto old_chains = find_synergy_chains(before, kReportedChainMinLength);
    auto new_chains = find_synergy_chains(after, kReportedChainMinLength);
    auto contains = [](const std::vector<SynergyChain>& chains, const SynergyChain& c) {
        return std::any_of(chains.begin(), chains.end(),
                           [&](const SynergyChain& other) { return other.path == c.path; });
    };

    std::vector<ChainChange> changes;
    for (const auto& c : new_chains) {
        if (!contains(old_chains, c))
            changes.push_back({alt_id, true, c});
    }
    for (const auto& c : old_chains) {
        if (!contains(new_chains, c))
            changes.push_back({alt_id, false, c});
    }
    return changes;
}

} // namespace

AssessmentModel apply_patch(const AssessmentModel& model, const WhatIfPatch& patch, bool allow_optimal_edit)
{
    reject_duplicates(patch);

    MatrixCache cache;
    std::vector<std::pair<CellRef, const CellOverride*>> targets;
    for (const auto& o : patch.overrides)
        targets.emplace_back(locate(model, o, allow_optimal_edit, cache), &o);

    for (const auto& [ref, o] : targets)
        cache.at(o->alternative_id)[ref.matrix].at(ref.row, ref.col).effect = o->new_effect;

    AssessmentModel out = model;
    for (auto& [alt_id, mats] : cache)
        out.find_alternative(alt_id)->matrices = std::move(mats);
    return out;
}

WhatIfOutcome apply_whatif(const AssessmentModel& model, const WhatIfPatch& patch, const WhatIfOptions& options)
{
    WhatIfOutcome outcome;
    outcome.baseline = score_model(model, options.score);
    outcome.model = apply_patch(model, patch, options.allow_optimal_edit);

    const PrioritySet priorities = resolve_priorities(model, options.score.scenario);

    std::map<DimensionPair, std::map<std::string, double>, PairOrder> deltas;
    MatrixCache original;
    for (const auto& o : patch.overrides) {
        CellRef ref = locate(model, o, true, original);
        const EffectMatrix& m = original.at(o.alternative_id)[ref.matrix];
        int old_effect = m.at(ref.row, ref.col).effect;
        double weight = priorities.value(o.row_qa, options.score.mode) + priorities.value(o.col_qa, options.score.mode);
        deltas[o.pair()][o.alternative_id] += weight * (o.new_effect - old_effect);
    }

    outcome.updated = outcome.baseline;
    for (auto& result : outcome.updated) {
        auto it = deltas.find(result.pair);
        if (it == deltas.end())
            continue;
        for (const auto& [alt_id, d] : it->second)
            result.raw[alt_id] += d;
        if (options.score.normalize)
            normalize_result(result, outcome.model);
    }

    for (std::size_t i = 0; i < outcome.baseline.size(); ++i) {
        const SisResult& before = outcome.baseline[i];
        const SisResult& after = outcome.updated[i];
        for (const auto& alt : model.alternatives) {
            WhatIfEntry e;
            e.pair = before.pair;
            e.alternative_id = alt.id;
            e.old_raw = before.raw.at(alt.id);
            e.new_raw = after.raw.at(alt.id);
            e.delta_raw = e.new_raw - e.old_raw;
            if (before.normalized.count(alt.id) && after.normalized.count(alt.id)) {
                e.old_percent = before.normalized.at(alt.id);
                e.new_percent = after.normalized.at(alt.id);
                e.delta_percent = *e.new_percent - *e.old_percent;
            }
            outcome.report.entries.push_back(std::move(e));
        }
    }

    for (const auto& alt : model.alternatives) {
        bool hit = std::any_of(patch.overrides.begin(), patch.overrides.end(),
                               [&](const CellOverride& o) { return o.alternative_id == alt.id; });
        if (hit) {
            auto changes = diff_chains(alt.id, effect_graph(alt, model),
                                       effect_graph(*outcome.model.find_alternative(alt.id), outcome.model));
            outcome.report.changed_chains.insert(outcome.report.changed_chains.end(), changes.begin(), changes.end());
        }
    }
    return outcome;
}

} // namespace siskit
