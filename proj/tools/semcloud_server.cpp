// semcloud-server: JSON-over-HTTP editing sessions for the browser editor.

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <csignal>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <httplib.h>

#include "semcloud/service.hpp"

namespace {
httplib::Server *g_server = nullptr;

void stop(int)
{
    if (g_server)
        g_server->stop();
}
}  // namespace

int main(int argc, char **argv)
{
    semcloud::ServiceConfig config = semcloud::ServiceConfig::from_env();

    CLI::App app{"Semantic word cloud editing service"};
    std::string host = "127.0.0.1";
    std::string session_dir;
    app.add_option("--host", host, "Listen address");
    app.add_option("--port", config.port, "Listen port (env SEMCLOUD_PORT)");
    app.add_option("--session-dir", session_dir, "Snapshot directory (env SEMCLOUD_SESSION_DIR)");
    CLI11_PARSE(app, argc, argv);
    if (!session_dir.empty())
        config.session_dir = session_dir;

    semcloud::Service service(config);
    httplib::Server server;
    service.install_routes(server);
    g_server = &server;
    std::signal(SIGINT, stop);
    std::signal(SIGTERM, stop);

    std::mutex m;
    std::condition_variable cv;
    bool done = false;
    std::thread janitor([&] {
        std::unique_lock lock(m);
        while (!cv.wait_for(lock, std::chrono::minutes(5), [&] { return done; }))
            service.evict_idle(semcloud::Service::Clock::now());
    });

    std::cerr << "semcloud-server listening on " << host << ':' << config.port << '\n';
    const bool ok = server.listen(host, config.port);
    {
        std::lock_guard lock(m);
        done = true;
    }
    cv.notify_all();
    janitor.join();
    return ok ? 0 : 1;
}
