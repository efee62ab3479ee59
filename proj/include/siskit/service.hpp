#pragma once

#include "siskit/document.hpp"
#include "siskit/error.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>

namespace httplib {
class Server;
}

namespace siskit {

struct ServiceConfig {
    using Clock = std::chrono::steady_clock;

    std::chrono::seconds idle_timeout = std::chrono::minutes(60);
    // Recheck every incremental delta against a full rescore; mismatches raise Error{internal}.
    bool verify = false;
    // When set, committed models are written to <dir>/<session_id>.json.
    std::optional<std::filesystem::path> snapshot_dir;
    std::function<Clock::time_point()> clock = [] { return Clock::now(); };
};

/// Per-request scoring knobs, taken from the query string over HTTP.
struct RequestOptions {
    ScoreOptions score;
    bool pending = false;
};

class SessionStore {
public:
    explicit SessionStore(ServiceConfig config = {});
    ~SessionStore();

    SessionStore(const SessionStore&) = delete;
    SessionStore& operator=(const SessionStore&) = delete;

    /// Takes a validated model and returns the new session id.
    std::string create(AssessmentModel model);

    Json model(const std::string& id);
    Json scores(const std::string& id, const RequestOptions& options);
    /// Merges one override into the pending patch and returns the delta of the
    /// touched pair relative to the previous pending state.
    Json patch_cell(const std::string& id, const CellOverride& override, const ScoreOptions& options);
    Json commit(const std::string& id);
    Json reset(const std::string& id);
    Json analysis(const std::string& id, bool pending);
    Json matrices(const std::string& id, const RequestOptions& options);
    Json pending_patch(const std::string& id);

    /// Drops idle sessions; later lookups of their ids report session_expired.
    std::size_t purge_expired();
    std::size_t size() const;

private:
    struct Session;
    std::shared_ptr<Session> acquire(const std::string& id);

    ServiceConfig config_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::set<std::string> expired_;
};

/// HTTP status used for each error code.
int http_status(ErrorCode code);
Json error_body(const Error& error);

/// Registers the JSON API routes on an httplib server.
void install_routes(httplib::Server& server, SessionStore& store);

} // namespace siskit
