#pragma once

#include "siskit/model.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace siskit {

/// A simple path made only of +1 edges.
struct SynergyChain {
    std::vector<std::string> path;
    std::vector<Dimension> path_dimensions; // one per node of path
    std::set<Dimension> dimensions_crossed;
    std::size_t length = 0; // edge count

    bool operator==(const SynergyChain&) const = default;
};

/// Every simple all-positive path with at least min_length edges, longest
/// first, ties ordered lexicographically by the id sequence. Edges whose
/// endpoints are not DMap nodes are ignored.
std::vector<SynergyChain> find_synergy_chains(const DecisionMap& dmap, std::size_t min_length = 1);

enum class TradeoffScope { within_dimension, across_dimensions, all };

std::string_view to_string(TradeoffScope scope);
std::optional<TradeoffScope> parse_tradeoff_scope(std::string_view text);

/// One negative effect.
struct TradeoffRecord {
    std::string from_qa;
    std::string to_qa;
    DimensionPair pair;
    bool same_dimension = false;
    std::optional<ImpactLevel> impact_level;

    bool operator==(const TradeoffRecord&) const = default;
};

std::vector<TradeoffRecord> find_tradeoffs(const std::vector<EffectMatrix>& matrices, TradeoffScope scope);
std::vector<TradeoffRecord> find_tradeoffs(const Alternative& alt, const AssessmentModel& model,
                                           TradeoffScope scope);

struct AffectedCount {
    std::string qa_id;
    int positive_in = 0;
    int negative_in = 0;

    bool operator==(const AffectedCount&) const = default;
};

/// Incoming effect counts for every model QA, ranked twice. Ties are broken
/// by qa_id.
struct AffectedRanking {
    std::vector<AffectedCount> by_negative;
    std::vector<AffectedCount> by_positive;
};

AffectedRanking most_affected_qas(const std::vector<EffectMatrix>& matrices, const AssessmentModel& model);
AffectedRanking most_affected_qas(const Alternative& alt, const AssessmentModel& model);

} // namespace siskit
