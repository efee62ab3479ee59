#include "siskit/render.hpp"
#include "siskit/service.hpp"
#include "siskit/validate.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <httplib.h>

#include <cstdlib>
#include <iostream>
#include <unistd.h>

namespace {

using namespace siskit;

enum Exit { kOk = 0, kWarnings = 1, kInvalid = 2, kUnreadable = 3 };

struct Config {
    std::string input;
    std::string format = "table";
    std::string scenario;
    bool strict = false;
    bool raw_priorities = false;
    int decimals = 2;
    bool allow_optimal_edit = false;
    std::string patch;

    std::string host = "127.0.0.1";
    int port = 8080;
    std::string snapshot_dir;
    int idle_minutes = 60;
    bool verify = false;
};

ScoreOptions score_options(const Config& c)
{
    ScoreOptions o;
    if (!c.scenario.empty())
        o.scenario = c.scenario;
    o.mode = c.raw_priorities ? PriorityMode::raw : PriorityMode::normalized;
    return o;
}

RenderOptions render_options(const Config& c)
{
    RenderOptions o;
    o.format = *parse_output_format(c.format);
    o.decimals = c.decimals;
    o.color = o.format == OutputFormat::table && std::getenv("SISKIT_NO_COLOR") == nullptr && isatty(STDOUT_FILENO);
    return o;
}

AssessmentModel load_model(const std::string& path)
{
    AssessmentModel model = parse_model(read_text_file(path));
    for (const auto& d : validate_model(model))
        std::cerr << format_diagnostic(d) << "\n";
    return model;
}

int cmd_validate(const Config& c)
{
    std::string text = read_text_file(c.input);
    std::vector<Diagnostic> diagnostics;
    try {
        diagnostics = validate_model(parse_model_document(text));
    } catch (const Error& e) {
        std::string message = e.what();
        if (!e.path().empty() && message.rfind(e.path() + ": ", 0) == 0)
            message.erase(0, e.path().size() + 2);
        diagnostics.push_back({Severity::error, e.code(), e.path(), message});
    }
    for (const auto& d : diagnostics)
        std::cout << format_diagnostic(d) << "\n";
    if (has_errors(diagnostics))
        return kInvalid;
    if (!diagnostics.empty() && c.strict)
        return kWarnings;
    return kOk;
}

int cmd_priorities(const Config& c)
{
    AssessmentModel model = load_model(c.input);
    ScoreReport report;
    report.mode = score_options(c).mode;
    report.scenario = score_options(c).scenario;
    report.priorities = priority_rows(model, report.scenario);
    std::cout << render_priorities(report, render_options(c));
    return kOk;
}

int cmd_score(const Config& c)
{
    AssessmentModel model = load_model(c.input);
    std::cout << render_scores(build_score_report(model, score_options(c)), render_options(c));
    return kOk;
}

int cmd_whatif(const Config& c)
{
    AssessmentModel model = load_model(c.input);
    WhatIfPatch patch = parse_patch(read_text_file(c.patch));
    WhatIfOptions options{score_options(c), c.allow_optimal_edit};
    WhatIfOutcome outcome = apply_whatif(model, patch, options);
    std::cout << render_whatif(outcome.report, model, render_options(c));
    return kOk;
}

int cmd_report(const Config& c)
{
    AssessmentModel model = load_model(c.input);
    std::cout << render_report(model, score_options(c), c.decimals);
    return kOk;
}

int cmd_serve(const Config& c)
{
    ServiceConfig sc;
    sc.idle_timeout = std::chrono::minutes(c.idle_minutes);
    sc.verify = c.verify;
    if (!c.snapshot_dir.empty())
        sc.snapshot_dir = c.snapshot_dir;
    SessionStore store(sc);

    if (!c.input.empty()) {
        std::string id = store.create(load_model(c.input));
        std::cout << "session " << id << "\n";
    }

    httplib::Server server;
    install_routes(server, store);
    std::cout << fmt::format("listening on http://{}:{}", c.host, c.port) << std::endl;
    if (!server.listen(c.host, c.port)) {
        std::cerr << fmt::format("error: cannot listen on {}:{}\n", c.host, c.port);
        return kUnreadable;
    }
    return kOk;
}

void add_model_options(CLI::App* cmd, Config& c, bool input_required = true)
{
    auto* in = cmd->add_option("--input,-i", c.input, "Assessment model file");
    if (input_required)
        in->required();
    cmd->add_option("--format,-f", c.format, "table, csv, json or markdown")
        ->check(CLI::IsMember({"table", "csv", "json", "markdown"}));
    cmd->add_option("--scenario", c.scenario, "Utility-matrix scenario to prioritize for");
    cmd->add_flag("--raw-priorities", c.raw_priorities, "Use raw instead of normalized priorities");
    cmd->add_option("--decimals", c.decimals, "Rounding decimals (0-6)")->check(CLI::Range(0, 6));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sustainability impact scoring for architecture alternatives"};
    app.require_subcommand(1);
    Config c;

    auto* validate = app.add_subcommand("validate", "Check a model and print diagnostics");
    add_model_options(validate, c);
    validate->add_flag("--strict", c.strict, "Exit 1 when there are warnings");

    auto* priorities = app.add_subcommand("priorities", "Print QA priorities");
    add_model_options(priorities, c);

    auto* score = app.add_subcommand("score", "Print raw and normalized SIS per dimension pair");
    add_model_options(score, c);

    auto* whatif = app.add_subcommand("whatif", "Apply cell overrides and print SIS changes");
    add_model_options(whatif, c);
    whatif->add_option("--patch,-p", c.patch, "Patch file with cell overrides")->required();
    whatif->add_flag("--allow-optimal-edit", c.allow_optimal_edit, "Permit overrides on the theoretical optimal");

    auto* report = app.add_subcommand("report", "Print a full Markdown report");
    add_model_options(report, c);

    auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
    add_model_options(serve, c, false);
    serve->add_option("--port", c.port, "Port to listen on")->check(CLI::Range(0, 65535));
    serve->add_option("--host", c.host, "Address to bind");
    serve->add_option("--snapshot-dir", c.snapshot_dir, "Write committed models to this directory")
        ->check(CLI::ExistingDirectory);
    serve->add_option("--idle-timeout", c.idle_minutes, "Session idle timeout in minutes")
        ->check(CLI::PositiveNumber);
    serve->add_flag("--verify", c.verify, "Check every incremental delta against a full rescore");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (*validate)
            return cmd_validate(c);
        if (*priorities)
            return cmd_priorities(c);
        if (*score)
            return cmd_score(c);
        if (*whatif)
            return cmd_whatif(c);
        if (*report)
            return cmd_report(c);
        return cmd_serve(c);
    } catch (const Error& e) {
        std::cerr << fmt::format("error ({}): {}\n", to_string(e.code()), e.what());
        return e.code() == ErrorCode::io ? kUnreadable : kInvalid;
    }
}
