#include "semcloud/service.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <httplib.h>

#include "semcloud/error.hpp"
#include "semcloud/metric_guides.hpp"
#include "semcloud/pipeline.hpp"
#include "semcloud/serialization.hpp"

namespace semcloud {
namespace {

ApiResponse failure(int status, std::string_view kind, const std::string &message)
{
    return {status, {{"error", kind}, {"message", message}}};
}

int status_for(errc code)
{
    switch (code) {
    case errc::empty_history:
        return 409;
    case errc::non_convergence:
        return 500;
    case errc::empty_input:
    case errc::unknown_term:
    case errc::unknown_state:
    case errc::schema:
    case errc::invalid_argument:
        return 400;
    }
    return 500;
}

template <typename Fn>
ApiResponse guarded(Fn &&fn)
{
    try {
        return fn();
    } catch (const Error &e) {
        return failure(status_for(e.code()), to_string(e.code()), e.what());
    } catch (const nlohmann::json::exception &e) {
        return failure(400, "BadRequest", e.what());
    }
}

ApiResponse no_session(const std::string &id)
{
    return failure(404, "UnknownSession", "no session with id '" + id + "'");
}

const nlohmann::json &params_of(const nlohmann::json &body)
{
    static const nlohmann::json empty = nlohmann::json::object();
    if (body.contains("params")) {
        if (!body.at("params").is_object())
            throw Error(errc::invalid_argument, "params must be an object");
        return body.at("params");
    }
    return empty;
}

TermId word_param(const nlohmann::json &params)
{
    if (!params.contains("word") || !params.at("word").is_number_integer() ||
        params.at("word").get<long long>() < 0)
        throw Error(errc::invalid_argument, "params.word must be a term id");
    return params.at("word").get<TermId>();
}

Vec2 target_param(const nlohmann::json &params)
{
    if (!params.contains("x") || !params.contains("y") || !params.at("x").is_number() ||
        !params.at("y").is_number())
        throw Error(errc::invalid_argument, "params.x and params.y must be numbers");
    return {params.at("x").get<double>(), params.at("y").get<double>()};
}

std::optional<std::string> env(const char *name)
{
    const char *v = std::getenv(name);
    if (!v || !*v)
        return std::nullopt;
    return std::string(v);
}

void reply(httplib::Response &res, const ApiResponse &api)
{
    res.status = api.status;
    res.set_content(api.body.dump(), "application/json");
}

std::optional<nlohmann::json> parse_body(const httplib::Request &req, httplib::Response &res)
{
    auto doc = nlohmann::json::parse(req.body, nullptr, false);
    if (doc.is_discarded()) {
        reply(res, failure(400, "BadRequest", "request body is not valid JSON"));
        return std::nullopt;
    }
    return doc;
}

std::optional<std::string> query(const httplib::Request &req, const char *key)
{
    if (!req.has_param(key))
        return std::nullopt;
    return req.get_param_value(key);
}

}  // namespace

ServiceConfig ServiceConfig::from_env()
{
    ServiceConfig c;
    if (auto v = env("SEMCLOUD_PORT"))
        c.port = static_cast<std::uint16_t>(std::stoul(*v));
    if (auto v = env("SEMCLOUD_SESSION_DIR"))
        c.session_dir = *v;
    if (auto v = env("SEMCLOUD_DEFAULT_K"))
        c.default_k = std::stoul(*v);
    if (auto v = env("SEMCLOUD_DEFAULT_SIGMA"))
        c.default_sigma = std::stod(*v);
    if (auto v = env("SEMCLOUD_DEFAULT_THETA"))
        c.default_theta = std::stod(*v);
    if (auto v = env("SEMCLOUD_IDLE_TTL_SECONDS"))
        c.idle_ttl = std::chrono::seconds(std::stoll(*v));
    return c;
}

Service::Service(ServiceConfig config)
    : config_(std::move(config))
{
    if (config_.session_dir) {
        std::filesystem::create_directories(*config_.session_dir);
        load_persisted();
    }
}

std::shared_ptr<Service::Entry> Service::find(const std::string &id)
{
    std::lock_guard lock(registry_mutex_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end())
        return nullptr;
    it->second->last_used = Clock::now().time_since_epoch().count();
    return it->second;
}

std::string Service::register_session(EditSession session)
{
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    std::lock_guard lock(registry_mutex_);
    std::string id;
    do {
        std::ostringstream os;
        os << std::hex << (rng() & 0xffffffffffffULL) << '-' << ++next_serial_;
        id = os.str();
    } while (sessions_.contains(id));
    sessions_.emplace(id, std::make_shared<Entry>(std::move(session)));
    return id;
}

void Service::persist(const std::string &id, const EditSession &session) const
{
    if (!config_.session_dir)
        return;
    const auto path = *config_.session_dir / (id + ".json");
    const auto tmp = *config_.session_dir / (id + ".json.tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << semcloud::export_session(session).dump();
    }
    std::filesystem::rename(tmp, path);
}

void Service::load_persisted()
{
    for (const auto &file : std::filesystem::directory_iterator(*config_.session_dir)) {
        if (file.path().extension() != ".json")
            continue;
        std::ifstream in(file.path(), std::ios::binary);
        const auto doc = nlohmann::json::parse(in, nullptr, false);
        if (doc.is_discarded())
            continue;
        try {
            sessions_.emplace(file.path().stem().string(),
                std::make_shared<Entry>(semcloud::import_session(doc)));
        } catch (const Error &) {
            // unreadable snapshot, leave it on disk for inspection
        }
    }
}

nlohmann::json Service::state_payload(const EditSession &session) const
{
    const auto &g = session.graph();
    nlohmann::json best = nlohmann::json::object();
    for (const auto &[metric, snap] : session.best())
        best[metric_name(metric)] = round_decimals(snap.value, 6);
    nlohmann::json out = {{"layout", layout_to_json(g, session.current())},
        {"metrics", metrics_to_json(g, session.metrics())}, {"best", std::move(best)},
        {"history_depth", session.history().size()}};
    out["previous_metrics"] = session.previous_metrics()
        ? metrics_to_json(g, *session.previous_metrics())
        : nlohmann::json(nullptr);
    return out;
}

ApiResponse Service::create_cloud(const nlohmann::json &body)
{
    return guarded([&]() -> ApiResponse {
        if (!body.is_object() || !body.contains("text") || !body.at("text").is_string())
            return failure(400, "BadRequest", "body must contain a text string");
        CloudConfig cloud;
        cloud.k = config_.default_k;
        cloud.sigma = config_.default_sigma;
        if (body.contains("k")) {
            if (!body.at("k").is_number_integer() || body.at("k").get<long long>() < 1)
                return failure(400, "BadRequest", "k must be a positive integer");
            cloud.k = body.at("k").get<std::size_t>();
        }
        cloud.sigma = body.value("sigma", cloud.sigma);
        cloud.min_font = body.value("min_font", cloud.min_font);
        cloud.max_font = body.value("max_font", cloud.max_font);
        cloud.force.rng_seed = body.value("seed", std::uint64_t{0});

        SimilarityGraph graph = build_similarity_graph(body.at("text").get<std::string>(), cloud);
        if (graph.vertex_count() < 2)
            return failure(422, "TooFewTerms", "fewer than two terms survived extraction");
        Layout initial = initial_layout(graph, cloud.force);

        InteractionConfig interaction;
        interaction.theta = config_.default_theta;
        interaction.rng_seed = cloud.force.rng_seed;
        interaction.force = cloud.force;
        EditSession session(std::move(graph), std::move(initial), std::move(interaction));

        nlohmann::json out = {{"graph", graph_to_json(session.graph())},
            {"layout", layout_to_json(session.graph(), session.current())},
            {"metrics", metrics_to_json(session.graph(), session.metrics())}};
        const std::string id = register_session(std::move(session));
        out["session_id"] = id;
        if (auto entry = find(id)) {
            std::shared_lock lock(entry->mutex);
            persist(id, entry->session);
        }
        return {200, std::move(out)};
    });
}

ApiResponse Service::mutate(const std::string &id, const nlohmann::json &body)
{
    auto entry = find(id);
    if (!entry)
        return no_session(id);
    return guarded([&]() -> ApiResponse {
        if (!body.is_object() || !body.contains("action") || !body.at("action").is_string())
            return failure(400, "BadRequest", "body must name an action");
        const std::string action = body.at("action").get<std::string>();
        const nlohmann::json &params = params_of(body);

        std::unique_lock lock(entry->mutex);
        EditSession &s = entry->session;
        if (action == "move") {
            s.move_word(word_param(params), target_param(params));
        } else if (action == "move_with_neighbors") {
            s.move_with_neighbors(word_param(params), target_param(params));
        } else if (action == "fill_holes") {
            s.fill_holes();
        } else if (action == "undo") {
            s.undo();
        } else if (action == "save_state") {
            if (!params.contains("name") || !params.at("name").is_string())
                return failure(400, "BadRequest", "save_state needs params.name");
            s.save_state(params.at("name").get<std::string>());
        } else if (action == "load_state") {
            if (params.contains("best") && params.at("best").is_string())
                s.load_best(parse_metric(params.at("best").get<std::string>()));
            else if (params.contains("name") && params.at("name").is_string())
                s.load_state(params.at("name").get<std::string>());
            else
                return failure(400, "BadRequest", "load_state needs params.name or params.best");
        } else {
            return failure(400, "BadRequest", "unknown action '" + action + "'");
        }
        persist(id, s);
        return {200, state_payload(s)};
    });
}

ApiResponse Service::layout(const std::string &id)
{
    auto entry = find(id);
    if (!entry)
        return no_session(id);
    std::shared_lock lock(entry->mutex);
    return {200, layout_to_json(entry->session.graph(), entry->session.current())};
}

ApiResponse Service::metrics(const std::string &id)
{
    auto entry = find(id);
    if (!entry)
        return no_session(id);
    std::shared_lock lock(entry->mutex);
    return {200, state_payload(entry->session)};
}

ApiResponse Service::guide(const std::string &id, const std::string &name,
    const std::optional<std::string> &focus_text, const std::optional<std::string> &grid_text)
{
    auto entry = find(id);
    if (!entry)
        return no_session(id);
    return guarded([&]() -> ApiResponse {
        std::optional<TermId> focus;
        if (focus_text) {
            std::size_t used = 0;
            unsigned long long v = 0;
            try {
                v = std::stoull(*focus_text, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used == 0 || used != focus_text->size())
                return failure(400, "UnknownTerm", "focus must be a term id");
            focus = static_cast<TermId>(v);
        }
        int grid = kDefaultHeatmapGrid;
        if (grid_text) {
            try {
                grid = std::stoi(*grid_text);
            } catch (const std::exception &) {
                return failure(400, "BadRequest", "grid must be an integer");
            }
        }

        std::shared_lock lock(entry->mutex);
        const auto &g = entry->session.graph();
        const auto &l = entry->session.current();
        if (name == "adjacency")
            return {200, adjacency_guide_to_json(adjacency_guide(g, l, focus))};
        if (name == "distortion") {
            if (!focus)
                return {200, {{"misplaced", misplaced_words(g, l)}}};
            return {200, heatmap_to_json(distortion_heatmap(g, l, *focus, grid))};
        }
        if (name == "compactness")
            return {200, compactness_guide_to_json(compactness_guide(l))};
        return failure(404, "UnknownGuide", "no guide named '" + name + "'");
    });
}

ApiResponse Service::export_session(const std::string &id)
{
    auto entry = find(id);
    if (!entry)
        return no_session(id);
    std::shared_lock lock(entry->mutex);
    return {200, semcloud::export_session(entry->session)};
}

ApiResponse Service::import_session(const std::string &id, const nlohmann::json &bundle)
{
    return guarded([&]() -> ApiResponse {
        if (id.empty() || id.find_first_of("/\\.") != std::string::npos)
            return failure(400, "BadRequest", "invalid session id");
        EditSession session = semcloud::import_session(bundle);
        std::shared_ptr<Entry> entry;
        {
            std::lock_guard lock(registry_mutex_);
            auto &slot = sessions_[id];
            slot = std::make_shared<Entry>(std::move(session));
            entry = slot;
        }
        std::shared_lock lock(entry->mutex);
        persist(id, entry->session);
        nlohmann::json out = state_payload(entry->session);
        out["session_id"] = id;
        return {200, std::move(out)};
    });
}

ApiResponse Service::patch_boxes(const std::string &id, const nlohmann::json &body)
{
    auto entry = find(id);
    if (!entry)
        return no_session(id);
    return guarded([&]() -> ApiResponse {
        if (!body.is_object() || !body.contains("boxes") || !body.at("boxes").is_array())
            return failure(400, "BadRequest", "body must contain a boxes array");
        std::unique_lock lock(entry->mutex);
        EditSession &s = entry->session;
        if (!s.history().empty() || !s.saved().empty())
            return failure(409, "AlreadyEdited", "boxes can only be replaced before the first edit");
        SimilarityGraph graph = s.graph();
        for (const auto &b : body.at("boxes")) {
            if (!b.is_object() || !b.contains("id") || !b.at("id").is_number_integer())
                return failure(400, "BadRequest", "each box needs an integer id");
            const long long tid = b.at("id").get<long long>();
            if (tid < 0)
                return failure(400, "UnknownTerm", "negative term id");
            graph.set_box(static_cast<TermId>(tid), b.at("w").get<double>(), b.at("h").get<double>());
        }
        InteractionConfig config = s.config();
        Layout initial = initial_layout(graph, config.force);
        s = EditSession(std::move(graph), std::move(initial), std::move(config));
        persist(id, s);
        nlohmann::json out = state_payload(s);
        out["graph"] = graph_to_json(s.graph());
        return {200, std::move(out)};
    });
}

std::size_t Service::evict_idle(Clock::time_point now)
{
    std::lock_guard lock(registry_mutex_);
    std::size_t dropped = 0;
    for (auto it = sessions_.begin(); it != sessions_.end();) {
        const Clock::time_point used{Clock::duration{it->second->last_used.load()}};
        if (now - used > config_.idle_ttl) {
            if (config_.session_dir) {
                std::error_code ec;
                std::filesystem::remove(*config_.session_dir / (it->first + ".json"), ec);
            }
            it = sessions_.erase(it);
            ++dropped;
        } else {
            ++it;
        }
    }
    return dropped;
}

std::size_t Service::session_count() const
{
    std::lock_guard lock(registry_mutex_);
    return sessions_.size();
}

void Service::install_routes(httplib::Server &server)
{
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
        {"Access-Control-Allow-Methods", "GET, POST, PUT, PATCH, OPTIONS"},
        {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(.*)", [](const httplib::Request &, httplib::Response &res) {
        res.status = 204;
    });

    server.Post("/clouds", [this](const httplib::Request &req, httplib::Response &res) {
        if (auto body = parse_body(req, res))
            reply(res, create_cloud(*body));
    });
    server.Post(R"(/sessions/([^/]+)/actions)",
        [this](const httplib::Request &req, httplib::Response &res) {
            if (auto body = parse_body(req, res))
                reply(res, mutate(req.matches[1], *body));
        });
    server.Get(R"(/sessions/([^/]+)/layout)",
        [this](const httplib::Request &req, httplib::Response &res) {
            reply(res, layout(req.matches[1]));
        });
    server.Get(R"(/sessions/([^/]+)/metrics)",
        [this](const httplib::Request &req, httplib::Response &res) {
            reply(res, metrics(req.matches[1]));
        });
    server.Get(R"(/sessions/([^/]+)/guides/([a-z]+))",
        [this](const httplib::Request &req, httplib::Response &res) {
            reply(res, guide(req.matches[1], req.matches[2], query(req, "focus"), query(req, "grid")));
        });
    server.Get(R"(/sessions/([^/]+)/export)",
        [this](const httplib::Request &req, httplib::Response &res) {
            reply(res, export_session(req.matches[1]));
        });
    server.Put(R"(/sessions/([^/]+)/export)",
        [this](const httplib::Request &req, httplib::Response &res) {
            if (auto body = parse_body(req, res))
                reply(res, import_session(req.matches[1], *body));
        });
    server.Patch(R"(/sessions/([^/]+)/boxes)",
        [this](const httplib::Request &req, httplib::Response &res) {
            if (auto body = parse_body(req, res))
                reply(res, patch_boxes(req.matches[1], *body));
        });
}

}  // namespace semcloud
