#include "oracles.hpp"

#include "siskit/model_io.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

using siskit::testing::fixture_path;

namespace {

struct CliRun {
    int status = -1;
    std::string out;
};

// Runs the CLI with stderr folded into stdout.
CliRun run(const std::string& args, const std::string& env = "SISKIT_NO_COLOR=1")
{
    std::string cmd = env + " " + SISKIT_CLI + " " + args + " 2>&1";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string fx(const std::string& name)
{
    return fixture_path(name);
}

bool contains(const std::string& text, std::string_view needle)
{
    return text.find(needle) != std::string::npos;
}

} // namespace

TEST(Cli, ValidateExitCodes)
{
    CliRun clean = run("validate --input " + fx("energy_case_study.json"));
    EXPECT_EQ(clean.status, 0);
    EXPECT_EQ(clean.out, "");

    CliRun heavy = run("validate --input " + fx("energy_case_study_heavy_weights.json"));
    EXPECT_EQ(heavy.status, 0);
    EXPECT_EQ(heavy.out, "WARNING weights: weights sum to 1.8\n");
    EXPECT_EQ(run("validate --strict --input " + fx("energy_case_study_heavy_weights.json")).status, 1);

    CliRun bad = run("validate --input " + fx("invalid_dimension.json"));
    EXPECT_EQ(bad.status, 2);
    EXPECT_TRUE(contains(bad.out, "ERROR quality_attributes[4].dimension: "));

    EXPECT_EQ(run("validate --input /nonexistent/model.json").status, 3);
}

TEST(Cli, ScoreServerless)
{
    CliRun r = run("score --raw-priorities --input " + fx("serverless_vs_containers.json"));
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(contains(r.out, "Containerization     11.00"));
    EXPECT_TRUE(contains(r.out, "Containerization      35.48"));
    EXPECT_TRUE(contains(r.out, "Theoretical optimal  100.00"));
}

TEST(Cli, ScoreCaseStudyAllFormats)
{
    for (const char* f : {"table", "csv", "json", "markdown"}) {
        CliRun r = run(std::string("score --format ") + f + " --decimals 3 --input " + fx("energy_case_study.json"));
        EXPECT_EQ(r.status, 0) << f;
        EXPECT_TRUE(contains(r.out, "76.51")) << f;
    }
    CliRun csv = run("score --format csv --decimals 3 --input " + fx("energy_case_study.json"));
    EXPECT_TRUE(contains(csv.out, "T-En,single_model,-0.425,28.409\n"));
    EXPECT_TRUE(contains(csv.out, "T-Ec,multi_model,2.425,76.510\n"));
}

TEST(Cli, ScoreWithoutOptimal)
{
    std::string path = ::testing::TempDir() + "no_optimal.json";
    auto m = siskit::testing::load_fixture("serverless_vs_containers.json");
    m.alternatives.pop_back();
    FILE* f = fopen(path.c_str(), "w");
    ASSERT_NE(f, nullptr);
    std::string text = siskit::serialize_model(m);
    fwrite(text.data(), 1, text.size(), f);
    fclose(f);
    CliRun r = run("score --input " + path);
    EXPECT_EQ(r.status, 2);
    EXPECT_TRUE(contains(r.out, "is_theoretical_optimal"));
}

TEST(Cli, Priorities)
{
    CliRun r = run("priorities --input " + fx("energy_case_study.json"));
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(contains(r.out, "QA                                   I  R     P    NP  Dimension\n"));
    EXPECT_TRUE(contains(r.out, "Data Completeness                    3  2  2.50  0.78          T\n"));
}

TEST(Cli, WhatIf)
{
    std::string base = "whatif --raw-priorities --input " + fx("serverless_vs_containers.json");
    CliRun r = run(base + " --patch " + fx("patch_latency_cost_neutral.json"));
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(contains(r.out, "11.00    18.00"));
    EXPECT_TRUE(contains(r.out, "35.48   58.06"));

    CliRun empty = run(base + " --patch " + fx("patch_empty.json"));
    EXPECT_EQ(empty.status, 0);
    EXPECT_TRUE(contains(empty.out, "0.00     0.00"));
    EXPECT_FALSE(contains(empty.out, "7.00"));

    CliRun guarded = run(base + " --patch " + fx("patch_optimal_edit.json"));
    EXPECT_EQ(guarded.status, 2);
    EXPECT_TRUE(contains(guarded.out, "optimal_readonly"));
    EXPECT_EQ(run(base + " --allow-optimal-edit --patch " + fx("patch_optimal_edit.json")).status, 0);

    CliRun unknown = run(base + " --patch " + fx("patch_unknown_cell.json"));
    EXPECT_EQ(unknown.status, 2);
    EXPECT_TRUE(contains(unknown.out, "containerization T-Ec[latency -> monetary_costs]"));
}

TEST(Cli, Report)
{
    CliRun r = run("report --input " + fx("energy_case_study.json"));
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(contains(r.out, "- `adaptability` → `reproducibility` (T-T"));
    EXPECT_TRUE(contains(r.out, "- `variability` → `reproducibility` (T-T"));
}

TEST(Cli, Deterministic)
{
    std::string args = "report --input " + fx("energy_case_study.json");
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, ColorFollowsEnvironment)
{
    // Output is a pipe here, so styling stays off either way.
    CliRun r = run("score --raw-priorities --input " + fx("serverless_vs_containers.json"), "");
    EXPECT_FALSE(contains(r.out, "\x1b["));
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run("score").status, 2);
    EXPECT_EQ(run("score --decimals 9 --input " + fx("energy_case_study.json")).status, 2);
    EXPECT_EQ(run("score --format xml --input " + fx("energy_case_study.json")).status, 2);
    EXPECT_EQ(run("--help").status, 0);
}
