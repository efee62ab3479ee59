#include "oracles.hpp"

#include "siskit/analysis.hpp"
#include "siskit/derive.hpp"

#include <gtest/gtest.h>

using namespace siskit;
using siskit::testing::load_fixture;

namespace {

DecisionMap chain_fragment()
{
    DecisionMap d;
    d.nodes = {{"traceability", Dimension::T, std::nullopt},
               {"transparency", Dimension::S, std::nullopt},
               {"stake_of_beneficiary", Dimension::Ec, std::nullopt},
               {"monetary_costs", Dimension::Ec, std::nullopt}};
    d.edges = {{"traceability", "transparency", 1, std::nullopt},
               {"transparency", "stake_of_beneficiary", 1, std::nullopt},
               {"stake_of_beneficiary", "monetary_costs", 1, std::nullopt}};
    return d;
}

} // namespace

TEST(Tradeoffs, WithinTechnicalDimension)
{
    AssessmentModel m = load_fixture("energy_case_study.json");
    auto within = find_tradeoffs(*m.find_alternative("multi_model"), m, TradeoffScope::within_dimension);
    ASSERT_EQ(within.size(), 2u);
    EXPECT_EQ(within[0].from_qa, "adaptability");
    EXPECT_EQ(within[0].to_qa, "reproducibility");
    EXPECT_EQ(within[1].from_qa, "variability");
    EXPECT_EQ(within[1].to_qa, "reproducibility");
    for (const auto& t : within) {
        EXPECT_TRUE(t.same_dimension);
        EXPECT_EQ(to_string(t.pair), "T-T");
    }
    EXPECT_TRUE(find_tradeoffs(*m.find_alternative("single_model"), m, TradeoffScope::within_dimension).empty());
}

TEST(Tradeoffs, ScopesPartitionAll)
{
    AssessmentModel m = load_fixture("energy_case_study.json");
    for (const auto& alt : m.alternatives) {
        auto all = find_tradeoffs(alt, m, TradeoffScope::all);
        auto within = find_tradeoffs(alt, m, TradeoffScope::within_dimension);
        auto across = find_tradeoffs(alt, m, TradeoffScope::across_dimensions);
        EXPECT_EQ(all.size(), within.size() + across.size()) << alt.id;
        for (const auto& t : across)
            EXPECT_FALSE(t.same_dimension);
    }
    auto across = find_tradeoffs(*m.find_alternative("multi_model"), m, TradeoffScope::across_dimensions);
    EXPECT_EQ(across.size(), 9u);
}

TEST(Tradeoffs, ScopeNames)
{
    for (auto s : {TradeoffScope::within_dimension, TradeoffScope::across_dimensions, TradeoffScope::all})
        EXPECT_EQ(parse_tradeoff_scope(to_string(s)), s);
    EXPECT_FALSE(parse_tradeoff_scope("sideways").has_value());
}

TEST(MostAffected, CaseStudyRanking)
{
    AssessmentModel m = load_fixture("energy_case_study.json");
    auto ranking = most_affected_qas(*m.find_alternative("multi_model"), m);
    ASSERT_EQ(ranking.by_negative.size(), 18u);
    EXPECT_EQ(ranking.by_negative[0].qa_id, "resource_utilization");
    EXPECT_EQ(ranking.by_negative[0].negative_in, 4);
    EXPECT_EQ(ranking.by_positive[0].qa_id, "wellbeing_of_it_staff");
    EXPECT_EQ(ranking.by_positive[0].positive_in, 4);

    auto monetary = std::find_if(ranking.by_negative.begin(), ranking.by_negative.end(),
                                 [](const AffectedCount& c) { return c.qa_id == "monetary_costs"; });
    ASSERT_NE(monetary, ranking.by_negative.end());
    EXPECT_EQ(monetary->negative_in, 3);
    EXPECT_EQ(monetary->positive_in, 3);
}

TEST(MostAffected, TiesBreakById)
{
    AssessmentModel m = load_fixture("serverless_vs_containers.json");
    auto ranking = most_affected_qas(*m.find_alternative("theoretical_optimal"), m);
    // cost_efficiency receives 3 positives, vendor_independence 2, the rest none.
    EXPECT_EQ(ranking.by_positive[0].qa_id, "cost_efficiency");
    EXPECT_EQ(ranking.by_positive[1].qa_id, "vendor_independence");
    EXPECT_EQ(ranking.by_positive[2].positive_in, 0);
    EXPECT_EQ(ranking.by_positive[2].qa_id, "latency");
}

TEST(Synergy, CrossDimensionChain)
{
    auto chains = find_synergy_chains(chain_fragment(), 3);
    ASSERT_EQ(chains.size(), 1u);
    const auto& c = chains[0];
    EXPECT_EQ(c.path, (std::vector<std::string>{"traceability", "transparency", "stake_of_beneficiary", "monetary_costs"}));
    EXPECT_EQ(c.length, 3u);
    EXPECT_EQ(c.dimensions_crossed, (std::set<Dimension>{Dimension::T, Dimension::S, Dimension::Ec}));
    EXPECT_EQ(c.path_dimensions,
              (std::vector<Dimension>{Dimension::T, Dimension::S, Dimension::Ec, Dimension::Ec}));
}

TEST(Synergy, OrderingAndMinimumLength)
{
    auto all = find_synergy_chains(chain_fragment());
    ASSERT_EQ(all.size(), 6u);
    EXPECT_EQ(all[0].length, 3u);
    EXPECT_EQ(all[1].length, 2u);
    EXPECT_EQ(all[1].path.front(), "traceability");
    EXPECT_EQ(all[2].path.front(), "transparency");
    EXPECT_EQ(all.back().length, 1u);
    EXPECT_EQ(find_synergy_chains(chain_fragment(), 2).size(), 3u);
}

TEST(Synergy, NegativeEdgesBreakChains)
{
    DecisionMap d = chain_fragment();
    d.edges[1].sign = -1;
    for (const auto& c : find_synergy_chains(d))
        EXPECT_LE(c.length, 1u);
}

TEST(Synergy, CyclesStaySimple)
{
    DecisionMap d;
    d.nodes = {{"a", Dimension::T, std::nullopt}, {"b", Dimension::T, std::nullopt}};
    d.edges = {{"a", "b", 1, std::nullopt}, {"b", "a", 1, std::nullopt}};
    auto chains = find_synergy_chains(d);
    ASSERT_EQ(chains.size(), 2u);
    EXPECT_EQ(chains[0].path, (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(chains[1].path, (std::vector<std::string>{"b", "a"}));
}

TEST(Synergy, EdgesOutsideNodesIgnored)
{
    DecisionMap d = chain_fragment();
    d.edges.push_back({"monetary_costs", "elsewhere", 1, std::nullopt});
    EXPECT_EQ(find_synergy_chains(d, 3).size(), 1u);
}

TEST(Synergy, CaseStudyMultiModelHasCrossDimensionChains)
{
    AssessmentModel m = load_fixture("energy_case_study.json");
    auto chains = find_synergy_chains(*m.find_alternative("multi_model")->dmap, 2);
    bool found = false;
    for (const auto& c : chains) {
        found = found || c.path == std::vector<std::string>{"traceability", "transparency", "stake_of_beneficiary"};
    }
    EXPECT_TRUE(found);
    EXPECT_TRUE(find_synergy_chains(*m.find_alternative("single_model")->dmap, 2).empty());
}
