#include "oracles.hpp"

#include "siskit/validate.hpp"

#include <gtest/gtest.h>

using namespace siskit;
using siskit::testing::load_fixture;

namespace {

bool has_code(const std::vector<Diagnostic>& ds, ErrorCode code, Severity severity = Severity::error)
{
    for (const auto& d : ds) {
        if (d.code == code && d.severity == severity)
            return true;
    }
    return false;
}

AssessmentModel serverless()
{
    return load_fixture("serverless_vs_containers.json");
}

} // namespace

TEST(Validate, ShippedFixturesAreClean)
{
    EXPECT_TRUE(validate_model(load_fixture("energy_case_study.json")).empty());
    EXPECT_TRUE(validate_model(serverless()).empty());
}

TEST(Validate, WeightSumWarning)
{
    AssessmentModel m = serverless();
    m.weights = {0.9, 0.9};
    auto ds = validate_model(m);
    ASSERT_EQ(ds.size(), 1u);
    EXPECT_EQ(ds[0].severity, Severity::warning);
    EXPECT_EQ(format_diagnostic(ds[0]), "WARNING weights: weights sum to 1.8");
    EXPECT_FALSE(has_errors(ds));
}

TEST(Validate, WeightOutOfRange)
{
    AssessmentModel m = serverless();
    m.weights.risk_weight = 1.5;
    EXPECT_TRUE(has_code(validate_model(m), ErrorCode::schema));
}

TEST(Validate, DuplicateQaId)
{
    AssessmentModel m = serverless();
    m.qas.push_back(m.qas[0]);
    auto ds = validate_model(m);
    ASSERT_TRUE(has_errors(ds));
    EXPECT_EQ(ds[0].path, "quality_attributes[5].id");
    EXPECT_EQ(ds[0].code, ErrorCode::duplicate_id);
}

TEST(Validate, LevelOutOfRange)
{
    AssessmentModel m = serverless();
    m.qas[1].importance = 4;
    EXPECT_TRUE(has_code(validate_model(m), ErrorCode::level_out_of_range));
}

TEST(Validate, MatrixAxisInWrongDimension)
{
    AssessmentModel m = serverless();
    (*m.alternatives[0].matrices)[0].col_qas[0] = "latency";
    EXPECT_TRUE(has_code(validate_model(m), ErrorCode::wrong_dimension));
}

TEST(Validate, DanglingMatrixAxis)
{
    AssessmentModel m = serverless();
    (*m.alternatives[0].matrices)[0].row_qas[0] = "ghost";
    EXPECT_TRUE(has_code(validate_model(m), ErrorCode::dangling_reference));
}

TEST(Validate, NonzeroDiagonalNamesTheQa)
{
    AssessmentModel m = serverless();
    EffectMatrix tt(Dimension::T, Dimension::T, {"scalability", "latency"}, {"scalability", "latency"});
    tt.at(1, 1).effect = 1;
    m.alternatives[0].matrices->push_back(tt);
    auto ds = validate_model(m);
    ASSERT_TRUE(has_errors(ds));
    bool named = false;
    for (const auto& d : ds)
        named = named || (d.message.find("latency") != std::string::npos && d.path.find("effects[1][1]") != std::string::npos);
    EXPECT_TRUE(named);
}

TEST(Validate, DuplicatePairWithinAlternative)
{
    AssessmentModel m = serverless();
    auto& mats = *m.alternatives[0].matrices;
    mats.push_back(mats[0]);
    EXPECT_TRUE(has_code(validate_model(m), ErrorCode::duplicate_id));
}

TEST(Validate, AlternativesRules)
{
    AssessmentModel m = serverless();
    m.alternatives[0].is_theoretical_optimal = true;
    EXPECT_TRUE(has_code(validate_model(m), ErrorCode::invalid_model));

    m = serverless();
    m.alternatives[1].id = m.alternatives[0].id;
    EXPECT_TRUE(has_code(validate_model(m), ErrorCode::duplicate_id));

    m = serverless();
    m.alternatives[0].matrices.reset();
    EXPECT_TRUE(has_code(validate_model(m), ErrorCode::invalid_model));

    m = serverless();
    m.alternatives.clear();
    auto ds = validate_model(m);
    ASSERT_EQ(ds.size(), 1u);
    EXPECT_EQ(format_diagnostic(ds[0]), "ERROR alternatives: no alternatives");
}

TEST(Validate, DecisionMapRules)
{
    AssessmentModel m = load_fixture("energy_case_study.json");
    auto& dmap = *m.find_alternative("single_model")->dmap;

    auto broken = m;
    broken.find_alternative("single_model")->dmap->edges.push_back({"adaptability", "nowhere", 1, std::nullopt});
    EXPECT_TRUE(has_code(validate_model(broken), ErrorCode::dangling_reference));

    broken = m;
    broken.find_alternative("single_model")->dmap->edges.push_back({"adaptability", "adaptability", 1, std::nullopt});
    EXPECT_TRUE(has_code(validate_model(broken), ErrorCode::invalid_model));

    broken = m;
    broken.find_alternative("single_model")->dmap->edges.push_back(dmap.edges[0]);
    EXPECT_TRUE(has_code(validate_model(broken), ErrorCode::duplicate_id));

    broken = m;
    broken.find_alternative("single_model")->dmap->nodes[0].dimension = Dimension::S;
    EXPECT_TRUE(has_code(validate_model(broken), ErrorCode::wrong_dimension));

    broken = m;
    broken.find_alternative("single_model")->dmap->edges[0].sign = 0;
    EXPECT_TRUE(has_code(validate_model(broken), ErrorCode::invalid_effect));
}

TEST(Validate, OptimalThatIsBeatenIsAWarning)
{
    AssessmentModel m = serverless();
    auto& to = (*m.find_alternative("theoretical_optimal")->matrices)[0];
    for (auto& cell : to.cells)
        cell.effect = -1;
    auto ds = validate_model(m);
    EXPECT_FALSE(has_errors(ds));
    EXPECT_TRUE(has_code(ds, ErrorCode::optimal_not_optimal, Severity::warning));
}

TEST(Validate, ErrorsPrecedeWarnings)
{
    AssessmentModel m = serverless();
    m.weights = {0.9, 0.9};
    m.qas[0].risk = 9;
    auto ds = validate_model(m);
    ASSERT_GE(ds.size(), 2u);
    EXPECT_EQ(ds.front().severity, Severity::error);
    EXPECT_EQ(ds.back().severity, Severity::warning);
}

TEST(Validate, UtilityMatrixReferences)
{
    AssessmentModel m = serverless();
    m.scenarios.push_back({"peak", "Seasonal peak load"});
    UtilityMatrix um;
    um.rows = {"scalability", "ghost"};
    um.columns = {"peak", "nope"};
    m.utility_matrix = um;
    auto ds = validate_model(m);
    int dangling = 0;
    for (const auto& d : ds)
        dangling += d.code == ErrorCode::dangling_reference;
    EXPECT_EQ(dangling, 2);
}
