#include "oracles.hpp"

#include "siskit/derive.hpp"
#include "siskit/error.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace siskit;
using siskit::testing::load_fixture;

TEST(Derive, CaseStudyPairsInPresentationOrder)
{
    AssessmentModel m = load_fixture("energy_case_study.json");
    auto mats = derive_matrices(*m.find_alternative("multi_model")->dmap, m);
    std::vector<std::string> labels;
    for (const auto& mat : mats)
        labels.push_back(to_string(mat.pair()));
    EXPECT_EQ(labels, (std::vector<std::string>{"T-T", "T-Ec", "T-En", "T-S", "S-Ec"}));
}

TEST(Derive, AxesCoverEveryQaOfTheDimension)
{
    AssessmentModel m = load_fixture("energy_case_study.json");
    auto mats = derive_matrices(*m.find_alternative("single_model")->dmap, m);
    for (const auto& mat : mats) {
        EXPECT_EQ(mat.row_qas, m.qa_ids_in(mat.dim_from));
        EXPECT_EQ(mat.col_qas, m.qa_ids_in(mat.dim_to));
    }
}

TEST(Derive, CellsMirrorEdges)
{
    AssessmentModel m = load_fixture("energy_case_study.json");
    const DecisionMap& dmap = *m.find_alternative("multi_model")->dmap;
    auto mats = derive_matrices(dmap, m);
    int nonzero = 0;
    for (const auto& mat : mats) {
        for (std::size_t r = 0; r < mat.rows(); ++r) {
            for (std::size_t c = 0; c < mat.cols(); ++c) {
                int e = mat.at(r, c).effect;
                if (e == 0)
                    continue;
                ++nonzero;
                auto it = std::find_if(dmap.edges.begin(), dmap.edges.end(), [&](const DecisionMapEdge& edge) {
                    return edge.from == mat.row_qas[r] && edge.to == mat.col_qas[c];
                });
                ASSERT_NE(it, dmap.edges.end());
                EXPECT_EQ(it->sign, e);
                EXPECT_EQ(mat.at(r, c).impact_level, it->impact_level);
            }
        }
    }
    EXPECT_EQ(nonzero, static_cast<int>(dmap.edges.size()));
}

TEST(Derive, EdgeOrderDoesNotMatter)
{
    AssessmentModel m = load_fixture("energy_case_study.json");
    DecisionMap dmap = *m.find_alternative("multi_model")->dmap;
    auto expected = derive_matrices(dmap, m);
    std::reverse(dmap.edges.begin(), dmap.edges.end());
    EXPECT_EQ(derive_matrices(dmap, m), expected);
}

TEST(Derive, ImpactFallsBackToTargetNode)
{
    AssessmentModel m = load_fixture("serverless_vs_containers.json");
    DecisionMap dmap;
    dmap.nodes = {{"scalability", Dimension::T, std::nullopt},
                  {"cost_efficiency", Dimension::Ec, ImpactLevel::systemic}};
    dmap.edges = {{"scalability", "cost_efficiency", 1, std::nullopt}};
    auto mats = derive_matrices(dmap, m);
    ASSERT_EQ(mats.size(), 1u);
    EXPECT_EQ(mats[0].at(0, 0).impact_level, ImpactLevel::systemic);
}

TEST(Derive, EmptyMapYieldsNothing)
{
    AssessmentModel m = load_fixture("serverless_vs_containers.json");
    EXPECT_TRUE(derive_matrices(DecisionMap{}, m).empty());
}

TEST(Derive, UnknownQaIsDangling)
{
    AssessmentModel m = load_fixture("serverless_vs_containers.json");
    DecisionMap dmap;
    dmap.nodes = {{"scalability", Dimension::T, std::nullopt}, {"ghost", Dimension::Ec, std::nullopt}};
    dmap.edges = {{"scalability", "ghost", 1, std::nullopt}};
    try {
        derive_matrices(dmap, m);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::dangling_reference);
    }
}

TEST(Derive, ExplicitMatricesWinAndGraphFollowsCells)
{
    AssessmentModel m = load_fixture("serverless_vs_containers.json");
    const Alternative& c = *m.find_alternative("containerization");
    auto mats = alternative_matrices(c, m);
    ASSERT_EQ(mats.size(), 1u);
    EXPECT_EQ(mats[0], (*c.matrices)[0]);
    DecisionMap g = effect_graph(c, m);
    EXPECT_EQ(g.edges.size(), 4u);
    EXPECT_EQ(g.nodes.size(), 5u);
}
