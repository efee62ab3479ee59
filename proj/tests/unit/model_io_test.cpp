#include "oracles.hpp"

#include "siskit/error.hpp"
#include "siskit/model_io.hpp"

#include <gtest/gtest.h>

using namespace siskit;
using siskit::testing::load_fixture;

namespace {

ErrorCode code_of(std::string_view text)
{
    try {
        parse_model_document(text);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::internal;
}

std::string path_of(std::string_view text)
{
    try {
        parse_model_document(text);
    } catch (const Error& e) {
        return e.path();
    }
    return "<none>";
}

const char* kMinimal = R"({
  "schema_version": "1",
  "weights": {"importance_weight": 0.5, "risk_weight": 0.5},
  "quality_attributes": [
    {"id": "a", "dimension": "T", "importance": 2, "risk": 1},
    {"id": "b", "dimension": "Ec", "importance": 1, "risk": 3}
  ],
  "alternatives": [
    {"id": "x", "matrices": [{"dim_from": "T", "dim_to": "Ec", "rows": ["a"], "columns": ["b"], "effects": [[1]]}]}
  ]
})";

} // namespace

TEST(ModelIo, CaseStudyFixtureParses)
{
    AssessmentModel m = load_fixture("energy_case_study.json");
    EXPECT_EQ(m.qas.size(), 18u);
    EXPECT_EQ(m.alternatives.size(), 3u);
    ASSERT_NE(m.theoretical_optimal(), nullptr);
    EXPECT_EQ(m.theoretical_optimal()->id, "theoretical_optimal");
    EXPECT_EQ(m.qa_ids_in(Dimension::En), std::vector<std::string>{"resource_utilization"});
}

TEST(ModelIo, RoundTripIsLossless)
{
    for (const char* name : {"energy_case_study.json", "serverless_vs_containers.json"}) {
        AssessmentModel m = load_fixture(name);
        std::string text = serialize_model(m);
        AssessmentModel again = parse_model(text);
        EXPECT_EQ(m, again) << name;
        EXPECT_EQ(serialize_model(again), text) << name;
    }
}

TEST(ModelIo, OptionalFieldsDefault)
{
    AssessmentModel m = parse_model_document(kMinimal);
    EXPECT_EQ(m.qas[0].name, "a");
    EXPECT_EQ(m.alternatives[0].name, "x");
    EXPECT_FALSE(m.qas[0].priority.has_value());
    EXPECT_FALSE(m.alternatives[0].is_theoretical_optimal);
    EXPECT_TRUE(m.scenarios.empty());
}

TEST(ModelIo, SyntaxErrorReportsLocation)
{
    try {
        parse_model_document("{\n  \"schema_version\": \"1\",\n  oops\n}");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::syntax);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(ModelIo, StructuralViolations)
{
    std::string base = kMinimal;
    auto with = [&](std::string_view from, std::string_view to) {
        std::string s = base;
        s.replace(s.find(from), from.size(), to);
        return s;
    };
    EXPECT_EQ(code_of(with("\"dimension\": \"Ec\"", "\"dimension\": \"X\"")), ErrorCode::schema);
    EXPECT_EQ(path_of(with("\"dimension\": \"Ec\"", "\"dimension\": \"X\"")), "quality_attributes[1].dimension");
    EXPECT_EQ(code_of(with("\"risk\": 3", "\"risk\": 4")), ErrorCode::schema);
    EXPECT_EQ(code_of(with("\"risk\": 3", "\"risk\": 0")), ErrorCode::schema);
    EXPECT_EQ(code_of(with("[[1]]", "[[2]]")), ErrorCode::schema);
    EXPECT_EQ(path_of(with("[[1]]", "[[2]]")), "alternatives[0].matrices[0].effects[0][0]");
    EXPECT_EQ(code_of(with("\"id\": \"x\"", "\"id\": \"x\", \"colour\": 1")), ErrorCode::schema);
    EXPECT_EQ(code_of(with("\"id\": \"a\"", "\"id\": \"\"")), ErrorCode::schema);
    EXPECT_EQ(code_of(with("\"id\": \"a\"", "\"id\": \"" + std::string(129, 'a') + "\"")), ErrorCode::schema);
    EXPECT_EQ(code_of(with("\"importance\": 2,", "\"importance\": \"high\",")), ErrorCode::schema);
    EXPECT_EQ(code_of(with("\"schema_version\": \"1\"", "\"schema_version\": \"9\"")), ErrorCode::schema);
    EXPECT_EQ(code_of(with("\"weights\": {\"importance_weight\": 0.5, \"risk_weight\": 0.5},", "")), ErrorCode::schema);
}

TEST(ModelIo, FullParseRaisesFirstValidationError)
{
    std::string s = kMinimal;
    s.replace(s.find("\"columns\": [\"b\"]"), 16, "\"columns\": [\"zz\"]");
    try {
        parse_model(s);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::dangling_reference);
        EXPECT_NE(e.path().find("alternatives[0].matrices[0]"), std::string::npos) << e.path();
    }
}

TEST(ModelIo, UnreadableFileIsIoError)
{
    try {
        read_text_file("/nonexistent/model.json");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::io);
    }
}

TEST(ModelIo, EdgeAndNodeImpactLevelsSurvive)
{
    AssessmentModel m = load_fixture("energy_case_study.json");
    const auto& edges = m.find_alternative("multi_model")->dmap->edges;
    ASSERT_FALSE(edges.empty());
    EXPECT_TRUE(edges.front().impact_level.has_value());
}
