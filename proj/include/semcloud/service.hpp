#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include <json.hpp>

#include "semcloud/edit_session.hpp"
#include "semcloud/text_pipeline.hpp"

namespace httplib {
class Server;
}

namespace semcloud {

struct ServiceConfig {
    std::uint16_t port = 8080;
    std::size_t default_k = kDefaultTopK;
    double default_sigma = 0.0;
    double default_theta = 0.1;
    /// When set, every session is snapshotted to <dir>/<id>.json and reloaded on start.
    std::optional<std::filesystem::path> session_dir;
    std::chrono::seconds idle_ttl = std::chrono::hours(24);

    /// SEMCLOUD_PORT, SEMCLOUD_SESSION_DIR, SEMCLOUD_DEFAULT_K,
    /// SEMCLOUD_DEFAULT_SIGMA, SEMCLOUD_DEFAULT_THETA, SEMCLOUD_IDLE_TTL_SECONDS.
    static ServiceConfig from_env();
};

struct ApiResponse {
    int status = 200;
    nlohmann::json body;
};

/// Session registry plus the JSON endpoints. Handlers are callable directly
/// (tests) or through install_routes on an httplib server. Mutations of one
/// session are serialized; reads share a lock; sessions are independent.
class Service {
public:
    using Clock = std::chrono::steady_clock;

    explicit Service(ServiceConfig config = {});

    ApiResponse create_cloud(const nlohmann::json &body);
    ApiResponse mutate(const std::string &id, const nlohmann::json &body);
    ApiResponse layout(const std::string &id);
    ApiResponse metrics(const std::string &id);
    ApiResponse guide(const std::string &id, const std::string &name,
        const std::optional<std::string> &focus, const std::optional<std::string> &grid);
    ApiResponse export_session(const std::string &id);
    /// Creates or replaces session `id` from an exported bundle.
    ApiResponse import_session(const std::string &id, const nlohmann::json &bundle);
    /// Replaces heuristic boxes with client-measured ones and recomputes the
    /// initial layout; only allowed before the first edit.
    ApiResponse patch_boxes(const std::string &id, const nlohmann::json &body);

    /// Drops sessions idle for longer than the configured TTL; returns how many.
    std::size_t evict_idle(Clock::time_point now);
    std::size_t session_count() const;
    const ServiceConfig &config() const { return config_; }

    void install_routes(httplib::Server &server);

private:
    struct Entry {
        explicit Entry(EditSession s)
            : session(std::move(s))
        {
        }
        std::shared_mutex mutex;
        EditSession session;
        std::atomic<Clock::rep> last_used{Clock::now().time_since_epoch().count()};
    };

    std::shared_ptr<Entry> find(const std::string &id);
    std::string register_session(EditSession session);
    void persist(const std::string &id, const EditSession &session) const;
    void load_persisted();
    nlohmann::json state_payload(const EditSession &session) const;

    ServiceConfig config_;
    mutable std::mutex registry_mutex_;
    std::map<std::string, std::shared_ptr<Entry>> sessions_;
    std::uint64_t next_serial_ = 0;
};

}  // namespace semcloud
