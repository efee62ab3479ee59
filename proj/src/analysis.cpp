#include "siskit/analysis.hpp"
#include "siskit/derive.hpp"

#include <algorithm>
#include <map>

namespace siskit {

namespace {

struct PositiveGraph {
    std::map<std::string, Dimension> dims;
    std::map<std::string, std::vector<std::string>> next; // sorted successor ids
};

PositiveGraph positive_graph(const DecisionMap& dmap)
{
    PositiveGraph g;
    for (const auto& n : dmap.nodes)
        g.dims.emplace(n.qa_id, n.dimension);
    for (const auto& e : dmap.edges) {
        if (e.sign <= 0 || e.from == e.to || !g.dims.count(e.from) || !g.dims.count(e.to))
            continue;
        auto& out = g.next[e.from];
        if (std::find(out.begin(), out.end(), e.to) == out.end())
            out.push_back(e.to);
    }
    for (auto& [id, out] : g.next)
        std::sort(out.begin(), out.end());
    return g;
}

void extend(const PositiveGraph& g, std::vector<std::string>& path, std::set<std::string>& on_path,
            std::size_t min_length, std::vector<SynergyChain>& out)
{
    if (path.size() - 1 >= min_length && path.size() > 1) {
        SynergyChain chain;
        chain.path = path;
        for (const auto& id : path) {
            chain.path_dimensions.push_back(g.dims.at(id));
            chain.dimensions_crossed.insert(g.dims.at(id));
        }
        chain.length = path.size() - 1;
        out.push_back(std::move(chain));
    }
    auto it = g.next.find(path.back());
    if (it == g.next.end())
        return;
    for (const auto& to : it->second) {
        if (on_path.count(to))
            continue;
        path.push_back(to);
        on_path.insert(to);
        extend(g, path, on_path, min_length, out);
        on_path.erase(to);
        path.pop_back();
    }
}

} // namespace

std::vector<SynergyChain> find_synergy_chains(const DecisionMap& dmap, std::size_t min_length)
{
    min_length = std::max<std::size_t>(min_length, 1);
    PositiveGraph g = positive_graph(dmap);

    std::vector<SynergyChain> chains;
    for (const auto& [start, dim] : g.dims) {
        std::vector<std::string> path{start};
        std::set<std::string> on_path{start};
        extend(g, path, on_path, min_length, chains);
    }
    std::sort(chains.begin(), chains.end(), [](const SynergyChain& a, const SynergyChain& b) {
        if (a.length != b.length)
            return a.length > b.length;
        return a.path < b.path;
    });
    return chains;
}

std::string_view to_string(TradeoffScope scope)
{
    switch (scope) {
    case TradeoffScope::within_dimension: return "within_dimension";
    case TradeoffScope::across_dimensions: return "across_dimensions";
    case TradeoffScope::all: return "all";
    }
    return "all";
}

std::optional<TradeoffScope> parse_tradeoff_scope(std::string_view text)
{
    for (auto s : {TradeoffScope::within_dimension, TradeoffScope::across_dimensions, TradeoffScope::all}) {
        if (to_string(s) == text)
            return s;
    }
    return std::nullopt;
}

std::vector<TradeoffRecord> find_tradeoffs(const std::vector<EffectMatrix>& matrices, TradeoffScope scope)
{
    std::vector<TradeoffRecord> out;
    for (const auto& m : matrices) {
        bool same = m.dim_from == m.dim_to;
        if ((scope == TradeoffScope::within_dimension && !same) ||
            (scope == TradeoffScope::across_dimensions && same))
            continue;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                const EffectCell& cell = m.at(r, c);
                if (cell.effect < 0)
                    out.push_back({m.row_qas[r], m.col_qas[c], m.pair(), same, cell.impact_level});
            }
        }
    }
    return out;
}

std::vector<TradeoffRecord> find_tradeoffs(const Alternative& alt, const AssessmentModel& model,
                                           TradeoffScope scope)
{
    return find_tradeoffs(alternative_matrices(alt, model), scope);
}

AffectedRanking most_affected_qas(const std::vector<EffectMatrix>& matrices, const AssessmentModel& model)
{
    std::map<std::string, AffectedCount> counts;
    for (const auto& qa : model.qas)
        counts[qa.id].qa_id = qa.id;
    for (const auto& m : matrices) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                int e = m.at(r, c).effect;
                if (e == 0)
                    continue;
                AffectedCount& entry = counts[m.col_qas[c]];
                entry.qa_id = m.col_qas[c];
                (e > 0 ? entry.positive_in : entry.negative_in) += 1;
            }
        }
    }

    AffectedRanking ranking;
    for (const auto& [id, entry] : counts)
        ranking.by_negative.push_back(entry);
    ranking.by_positive = ranking.by_negative;

    std::stable_sort(ranking.by_negative.begin(), ranking.by_negative.end(),
                     [](const AffectedCount& a, const AffectedCount& b) { return a.negative_in > b.negative_in; });
    std::stable_sort(ranking.by_positive.begin(), ranking.by_positive.end(),
                     [](const AffectedCount& a, const AffectedCount& b) { return a.positive_in > b.positive_in; });
    return ranking;
}

AffectedRanking most_affected_qas(const Alternative& alt, const AssessmentModel& model)
{
    return most_affected_qas(alternative_matrices(alt, model), model);
}

} // namespace siskit
