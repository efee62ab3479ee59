#include "siskit/service.hpp"
#include "siskit/validate.hpp"

#include <fmt/format.h>
#include <httplib.h>

#include <cmath>
#include <fstream>
#include <random>

namespace siskit {

struct SessionStore::Session {
    std::mutex mutex; // serializes every request on this session
    AssessmentModel baseline;
    WhatIfPatch pending;
    ServiceConfig::Clock::time_point created_at;
    ServiceConfig::Clock::time_point last_touched;
};

namespace {

std::string new_session_id()
{
    static std::mutex mutex;
    static std::mt19937_64 rng{std::random_device{}()};
    std::lock_guard lock(mutex);
    return fmt::format("{:016x}{:016x}", rng(), rng());
}

AssessmentModel effective_model(const AssessmentModel& baseline, const WhatIfPatch& pending, bool use_pending)
{
    if (!use_pending || pending.overrides.empty())
        return baseline;
    return apply_patch(baseline, pending);
}

void check_against_rescore(const WhatIfOutcome& outcome, const ScoreOptions& options)
{
    auto fresh = score_model(outcome.model, options);
    auto mismatch = [](const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
        if (a.size() != b.size())
            return true;
        for (const auto& [id, v] : a) {
            auto it = b.find(id);
            if (it == b.end() || std::abs(it->second - v) > 1e-9)
                return true;
        }
        return false;
    };
    bool bad = fresh.size() != outcome.updated.size();
    for (std::size_t i = 0; !bad && i < fresh.size(); ++i) {
        bad = fresh[i].pair != outcome.updated[i].pair || mismatch(fresh[i].raw, outcome.updated[i].raw) ||
              mismatch(fresh[i].normalized, outcome.updated[i].normalized);
    }
    if (bad)
        throw Error(ErrorCode::internal, "incremental what-if result differs from a full rescore");
}

} // namespace

SessionStore::SessionStore(ServiceConfig config) : config_(std::move(config)) {}
SessionStore::~SessionStore() = default;

std::string SessionStore::create(AssessmentModel model)
{
    auto session = std::make_shared<Session>();
    session->baseline = std::move(model);
    session->created_at = session->last_touched = config_.clock();

    std::lock_guard lock(mutex_);
    std::string id;
    do {
        id = new_session_id();
    } while (sessions_.count(id));
    sessions_.emplace(id, std::move(session));
    return id;
}

std::shared_ptr<SessionStore::Session> SessionStore::acquire(const std::string& id)
{
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) {
        if (expired_.count(id))
            throw Error(ErrorCode::session_expired, fmt::format("session {} has expired", id), id);
        throw Error(ErrorCode::unknown_session, fmt::format("no session {}", id), id);
    }
    auto now = config_.clock();
    if (now - it->second->last_touched > config_.idle_timeout) {
        sessions_.erase(it);
        expired_.insert(id);
        throw Error(ErrorCode::session_expired, fmt::format("session {} has expired", id), id);
    }
    it->second->last_touched = now;
    return it->second;
}

std::size_t SessionStore::purge_expired()
{
    std::lock_guard lock(mutex_);
    auto now = config_.clock();
    std::size_t dropped = 0;
    for (auto it = sessions_.begin(); it != sessions_.end();) {
        if (now - it->second->last_touched > config_.idle_timeout) {
            expired_.insert(it->first);
            it = sessions_.erase(it);
            ++dropped;
        } else {
            ++it;
        }
    }
    return dropped;
}

std::size_t SessionStore::size() const
{
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

Json SessionStore::model(const std::string& id)
{
    auto s = acquire(id);
    std::lock_guard lock(s->mutex);
    return model_to_json(s->baseline);
}

Json SessionStore::scores(const std::string& id, const RequestOptions& options)
{
    auto s = acquire(id);
    std::lock_guard lock(s->mutex);
    AssessmentModel m = effective_model(s->baseline, s->pending, options.pending);
    Json doc = score_report_to_json(build_score_report(m, options.score));
    doc["pending"] = options.pending;
    doc["pending_overrides"] = s->pending.overrides.size();
    return doc;
}

Json SessionStore::patch_cell(const std::string& id, const CellOverride& override, const ScoreOptions& options)
{
    auto s = acquire(id);
    std::lock_guard lock(s->mutex);

    // Validates the merged patch against the baseline before anything changes.
    WhatIfPatch merged = s->pending;
    merged.merge(override);
    AssessmentModel current = effective_model(s->baseline, s->pending, true);
    apply_patch(s->baseline, merged);

    WhatIfOptions wopts{options, false};
    WhatIfOutcome step = apply_whatif(current, WhatIfPatch{{override}}, wopts);
    if (config_.verify)
        check_against_rescore(step, options);

    WhatIfReport touched;
    for (auto& e : step.report.entries) {
        if (e.pair == override.pair())
            touched.entries.push_back(e);
    }
    touched.changed_chains = step.report.changed_chains;

    s->pending = std::move(merged);

    Json doc = whatif_report_to_json(touched);
    doc["override"] = override_to_json(override);
    doc["pending_overrides"] = s->pending.overrides.size();
    return doc;
}

Json SessionStore::commit(const std::string& id)
{
    auto s = acquire(id);
    std::lock_guard lock(s->mutex);
    std::size_t applied = s->pending.overrides.size();
    if (applied > 0) {
        s->baseline = apply_patch(s->baseline, s->pending);
        s->pending = {};
    }
    if (config_.snapshot_dir) {
        auto path = *config_.snapshot_dir / (id + ".json");
        std::ofstream out(path);
        out << serialize_model(s->baseline);
        if (!out)
            throw Error(ErrorCode::io, fmt::format("cannot write snapshot {}", path.string()), path.string());
    }
    return {{"status", "committed"}, {"applied_overrides", applied}};
}

Json SessionStore::reset(const std::string& id)
{
    auto s = acquire(id);
    std::lock_guard lock(s->mutex);
    std::size_t discarded = s->pending.overrides.size();
    s->pending = {};
    return {{"status", "reset"}, {"discarded_overrides", discarded}};
}

Json SessionStore::analysis(const std::string& id, bool pending)
{
    auto s = acquire(id);
    std::lock_guard lock(s->mutex);
    return analysis_to_json(effective_model(s->baseline, s->pending, pending));
}

Json SessionStore::matrices(const std::string& id, const RequestOptions& options)
{
    auto s = acquire(id);
    std::lock_guard lock(s->mutex);
    AssessmentModel m = effective_model(s->baseline, s->pending, options.pending);
    return matrices_to_json(m, resolve_priorities(m, options.score.scenario));
}

Json SessionStore::pending_patch(const std::string& id)
{
    auto s = acquire(id);
    std::lock_guard lock(s->mutex);
    return patch_to_json(s->pending);
}

int http_status(ErrorCode code)
{
    switch (code) {
    case ErrorCode::unknown_cell:
    case ErrorCode::unknown_session:
    case ErrorCode::session_expired: return 404;
    case ErrorCode::optimal_readonly: return 403;
    case ErrorCode::no_theoretical_optimal:
    case ErrorCode::optimal_not_optimal: return 409;
    case ErrorCode::io:
    case ErrorCode::internal: return 500;
    default: return 400;
    }
}

Json error_body(const Error& error)
{
    return {{"code", std::string(to_string(error.code()))},
            {"message", error.what()},
            {"detail", error.path().empty() ? Json() : Json{{"path", error.path()}}}};
}

namespace {

void send_json(httplib::Response& res, const Json& doc, int status = 200)
{
    res.status = status;
    res.set_content(doc.dump(2) + "\n", "application/json");
}

bool bool_param(const httplib::Request& req, const char* name)
{
    if (!req.has_param(name))
        return false;
    std::string v = req.get_param_value(name);
    if (v == "true" || v == "1")
        return true;
    if (v == "false" || v == "0")
        return false;
    throw Error(ErrorCode::schema, fmt::format("query parameter {} must be true or false", name), name);
}

RequestOptions request_options(const httplib::Request& req)
{
    RequestOptions o;
    o.pending = bool_param(req, "pending");
    if (bool_param(req, "raw_priorities"))
        o.score.mode = PriorityMode::raw;
    if (req.has_param("scenario"))
        o.score.scenario = req.get_param_value("scenario");
    return o;
}

template <typename Fn>
httplib::Server::Handler guarded(Fn fn)
{
    return [fn](const httplib::Request& req, httplib::Response& res) {
        try {
            fn(req, res);
        } catch (const Error& e) {
            send_json(res, error_body(e), http_status(e.code()));
        } catch (const std::exception& e) {
            send_json(res, {{"code", "internal"}, {"message", e.what()}, {"detail", nullptr}}, 500);
        }
    };
}

Json diagnostics_json(const std::vector<Diagnostic>& diagnostics)
{
    Json list = Json::array();
    for (const auto& d : diagnostics) {
        list.push_back({{"severity", std::string(to_string(d.severity))},
                        {"code", std::string(to_string(d.code))},
                        {"path", d.path},
                        {"message", d.message}});
    }
    return list;
}

} // namespace

void install_routes(httplib::Server& server, SessionStore& store)
{
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, POST, PATCH, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
        if (res.body.empty()) {
            send_json(res,
                      {{"code", res.status == 404 ? "not_found" : "http_error"},
                       {"message", fmt::format("{} {} is not served", req.method, req.path)},
                       {"detail", nullptr}},
                      res.status);
        }
    });

    server.Post("/sessions", guarded([&store](const httplib::Request& req, httplib::Response& res) {
        AssessmentModel model = parse_model_document(req.body);
        auto diagnostics = validate_model(model);
        if (has_errors(diagnostics)) {
            send_json(res,
                      {{"code", "invalid_model"},
                       {"message", format_diagnostic(diagnostics.front())},
                       {"detail", {{"diagnostics", diagnostics_json(diagnostics)}}}},
                      400);
            return;
        }
        std::string id = store.create(std::move(model));
        send_json(res, {{"session_id", id}, {"warnings", diagnostics_json(diagnostics)}}, 201);
    }));

    server.Get("/sessions/:id/model", guarded([&store](const httplib::Request& req, httplib::Response& res) {
        send_json(res, store.model(req.path_params.at("id")));
    }));

    server.Get("/sessions/:id/scores", guarded([&store](const httplib::Request& req, httplib::Response& res) {
        send_json(res, store.scores(req.path_params.at("id"), request_options(req)));
    }));

    server.Patch("/sessions/:id/cells", guarded([&store](const httplib::Request& req, httplib::Response& res) {
        const std::string& id = req.path_params.at("id");
        RequestOptions options = request_options(req);
        CellOverride o = override_from_json(parse_json_text(req.body), "cell");
        send_json(res, store.patch_cell(id, o, options.score));
    }));

    server.Get("/sessions/:id/patch", guarded([&store](const httplib::Request& req, httplib::Response& res) {
        send_json(res, store.pending_patch(req.path_params.at("id")));
    }));

    server.Post("/sessions/:id/commit", guarded([&store](const httplib::Request& req, httplib::Response& res) {
        send_json(res, store.commit(req.path_params.at("id")));
    }));

    server.Post("/sessions/:id/reset", guarded([&store](const httplib::Request& req, httplib::Response& res) {
        send_json(res, store.reset(req.path_params.at("id")));
    }));

    server.Get("/sessions/:id/analysis", guarded([&store](const httplib::Request& req, httplib::Response& res) {
        send_json(res, store.analysis(req.path_params.at("id"), request_options(req).pending));
    }));

    server.Get("/sessions/:id/matrices", guarded([&store](const httplib::Request& req, httplib::Response& res) {
        send_json(res, store.matrices(req.path_params.at("id"), request_options(req)));
    }));
}

} // namespace siskit
