#include "siskit/derive.hpp"
#include "siskit/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>

namespace siskit {

std::vector<EffectMatrix> derive_matrices(const DecisionMap& dmap, const AssessmentModel& model)
{
    std::map<DimensionPair, EffectMatrix, PairOrder> by_pair;

    for (const auto& edge : dmap.edges) {
        const QualityAttribute* from = model.find_qa(edge.from);
        const QualityAttribute* to = model.find_qa(edge.to);
        if (!from || !to) {
            throw Error(ErrorCode::dangling_reference,
                        fmt::format("edge {} -> {} references a QA that is not defined in the model",
                                    edge.from, edge.to));
        }
        if (edge.sign == 0 || edge.from == edge.to)
            continue;

        DimensionPair pair{from->dimension, to->dimension};
        auto it = by_pair.find(pair);
        if (it == by_pair.end()) {
            it = by_pair
                     .emplace(pair, EffectMatrix(pair.from, pair.to, model.qa_ids_in(pair.from),
                                                 model.qa_ids_in(pair.to)))
                     .first;
        }
        EffectMatrix& m = it->second;
        EffectCell& cell = m.at(*m.row_index(edge.from), *m.col_index(edge.to));
        cell.effect = edge.sign > 0 ? 1 : -1;
        cell.impact_level = edge.impact_level;
        if (!cell.impact_level) {
            if (const DecisionMapNode* target = dmap.find_node(edge.to))
                cell.impact_level = target->impact_level;
        }
    }

    std::vector<EffectMatrix> out;
    for (auto& [pair, m] : by_pair) {
        if (!m.all_zero())
            out.push_back(std::move(m));
    }
    return out;
}

std::vector<EffectMatrix> alternative_matrices(const Alternative& alt, const AssessmentModel& model)
{
    if (alt.matrices) {
        std::vector<EffectMatrix> out = *alt.matrices;
        std::stable_sort(out.begin(), out.end(), [](const EffectMatrix& a, const EffectMatrix& b) {
            return pair_precedes(a.pair(), b.pair());
        });
        return out;
    }
    if (alt.dmap)
        return derive_matrices(*alt.dmap, model);
    return {};
}

DecisionMap effect_graph(const Alternative& alt, const AssessmentModel& model)
{
    if (!alt.matrices && alt.dmap)
        return *alt.dmap;

    DecisionMap graph;
    auto add_node = [&](const std::string& id, std::optional<ImpactLevel> level) {
        if (graph.find_node(id))
            return;
        const QualityAttribute* qa = model.find_qa(id);
        graph.nodes.push_back(DecisionMapNode{id, qa ? qa->dimension : Dimension::T, level});
    };
    for (const auto& m : alternative_matrices(alt, model)) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                const EffectCell& cell = m.at(r, c);
                if (cell.effect == 0)
                    continue;
                add_node(m.row_qas[r], std::nullopt);
                add_node(m.col_qas[c], std::nullopt);
                graph.edges.push_back(
                    DecisionMapEdge{m.row_qas[r], m.col_qas[c], cell.effect, cell.impact_level});
            }
        }
    }
    return graph;
}

} // namespace siskit
