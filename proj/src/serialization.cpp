#include "semcloud/serialization.hpp"

#include <cmath>
#include <sstream>

#include "semcloud/error.hpp"

namespace semcloud {
namespace {

constexpr const char *kSessionFormat = "semcloud-session/1";

double coord(double v, Precision p)
{
    return p == Precision::display ? round_decimals(v, 3) : v;
}

double ratio(double v, Precision p)
{
    return p == Precision::display ? round_decimals(v, 6) : v;
}

const json &member(const json &doc, const char *key)
{
    if (!doc.is_object() || !doc.contains(key))
        throw Error(errc::schema, std::string("missing field '") + key + "'");
    return doc.at(key);
}

double number(const json &doc, const char *key)
{
    const json &v = member(doc, key);
    if (!v.is_number())
        throw Error(errc::schema, std::string("field '") + key + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        throw Error(errc::schema, std::string("field '") + key + "' must be finite");
    return d;
}

std::size_t index(const json &doc, const char *key)
{
    const json &v = member(doc, key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw Error(errc::schema, std::string("field '") + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

std::string text(const json &doc, const char *key)
{
    const json &v = member(doc, key);
    if (!v.is_string())
        throw Error(errc::schema, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

const json &array(const json &doc, const char *key)
{
    const json &v = member(doc, key);
    if (!v.is_array())
        throw Error(errc::schema, std::string("field '") + key + "' must be an array");
    return v;
}

json rect_to_json(const Rect &r, Precision p)
{
    return {{"x", coord(r.x, p)}, {"y", coord(r.y, p)}, {"w", coord(r.w, p)}, {"h", coord(r.h, p)}};
}

json edges_to_json(const std::vector<GuideEdge> &edges, bool with_flag)
{
    json out = json::array();
    for (const auto &e : edges) {
        json item = {{"u", e.u}, {"v", e.v}, {"weight", round_decimals(e.weight, 6)}};
        if (with_flag)
            item["realized"] = e.realized;
        out.push_back(std::move(item));
    }
    return out;
}

std::string xml_escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        case '\'':
            out += "&apos;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

template <typename Fn>
auto schema_guard(Fn &&fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const json::exception &e) {
        throw Error(errc::schema, e.what());
    }
}

}  // namespace

double round_decimals(double value, int decimals)
{
    const double scale = std::pow(10.0, decimals);
    const double r = std::round(value * scale) / scale;
    return r == 0.0 ? 0.0 : r;  // no "-0.0" in output
}

json graph_to_json(const SimilarityGraph &graph, Precision p)
{
    json vertices = json::array();
    for (TermId i = 0; i < graph.vertex_count(); ++i) {
        const Term &t = graph.term(i);
        vertices.push_back({{"id", i}, {"surface", t.surface}, {"stem", t.stem},
            {"frequency", t.frequency}, {"font_size", coord(t.font_size, p)},
            {"box", {{"w", coord(t.box_width, p)}, {"h", coord(t.box_height, p)}}}});
    }
    json edges = json::array();
    for (const Edge &e : graph.edges())
        edges.push_back({{"u", e.u}, {"v", e.v}, {"weight", ratio(e.weight, p)}});
    return {{"sigma", graph.sigma()}, {"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

SimilarityGraph graph_from_json(const json &doc)
{
    return schema_guard([&] {
        const json &vs = array(doc, "vertices");
        std::vector<Term> terms(vs.size());
        std::vector<bool> seen(vs.size(), false);
        for (const json &v : vs) {
            const std::size_t id = index(v, "id");
            if (id >= vs.size() || seen[id])
                throw Error(errc::schema, "vertex ids must be unique and contiguous from 0");
            seen[id] = true;
            Term &t = terms[id];
            t.surface = text(v, "surface");
            t.stem = v.contains("stem") ? text(v, "stem") : t.surface;
            t.frequency = static_cast<int>(index(v, "frequency"));
            t.font_size = number(v, "font_size");
            const json &box = member(v, "box");
            t.box_width = number(box, "w");
            t.box_height = number(box, "h");
            if (t.box_width <= 0.0 || t.box_height <= 0.0)
                throw Error(errc::schema, "vertex boxes must have positive size");
        }
        std::vector<Edge> edges;
        for (const json &e : array(doc, "edges"))
            edges.push_back({index(e, "u"), index(e, "v"), number(e, "weight")});
        const double sigma = doc.contains("sigma") ? number(doc, "sigma") : 0.0;
        return SimilarityGraph(std::move(terms), std::move(edges), sigma);
    });
}

json layout_to_json(const SimilarityGraph &graph, const Layout &layout, Precision p)
{
    json terms = json::array();
    for (TermId i = 0; i < layout.size(); ++i) {
        const Term &t = graph.term(i);
        terms.push_back({{"id", i}, {"x", coord(layout.positions[i].x, p)},
            {"y", coord(layout.positions[i].y, p)}, {"w", coord(layout.sizes[i].w, p)},
            {"h", coord(layout.sizes[i].h, p)}, {"surface", t.surface},
            {"font_size", coord(t.font_size, p)}});
    }
    return {{"terms", std::move(terms)}, {"bbox", rect_to_json(layout.bounds(), p)}};
}

Layout layout_from_json(const json &doc, const SimilarityGraph &graph)
{
    return schema_guard([&] {
        const std::size_t n = graph.vertex_count();
        Layout layout;
        layout.positions.resize(n);
        layout.sizes.resize(n);
        std::vector<bool> seen(n, false);
        for (const json &t : array(doc, "terms")) {
            const std::size_t id = index(t, "id");
            if (id >= n)
                throw Error(errc::schema, "layout references unknown term " + std::to_string(id));
            if (seen[id])
                throw Error(errc::schema, "layout lists term " + std::to_string(id) + " twice");
            seen[id] = true;
            layout.positions[id] = {number(t, "x"), number(t, "y")};
            layout.sizes[id] = {number(t, "w"), number(t, "h")};
            if (layout.sizes[id].w <= 0.0 || layout.sizes[id].h <= 0.0)
                throw Error(errc::schema, "layout boxes must have positive size");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!seen[i])
                throw Error(errc::schema, "layout is missing term " + std::to_string(i));
        }
        return layout;
    });
}

json metrics_to_json(const SimilarityGraph &graph, const MetricReport &report)
{
    json realized = json::array();
    for (std::size_t idx : report.realized_edges) {
        const Edge &e = graph.edges()[idx];
        realized.push_back({e.u, e.v});
    }
    json out = {{"ra", round_decimals(report.realized_adjacencies, 6)},
        {"distortion", round_decimals(report.distortion, 6)},
        {"compactness", round_decimals(report.compactness, 6)},
        {"realized_edges", std::move(realized)}};
    if (report.compactness_clamped)
        out["compactness_clamped"] = true;
    return out;
}

json adjacency_guide_to_json(const AdjacencyGuide &guide)
{
    json out = {{"realized", edges_to_json(guide.realized, false)}};
    if (guide.focus) {
        out["focus"] = *guide.focus;
        out["focus_edges"] = edges_to_json(guide.focus_edges, true);
    } else {
        out["focus"] = nullptr;
        out["missed"] = edges_to_json(guide.top_missed, false);
    }
    return out;
}

json heatmap_to_json(const DistortionHeatMap &map)
{
    json rows = json::array();
    for (std::size_t r = 0; r < map.rows; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < map.columns; ++c)
            row.push_back(round_decimals(map.at(c, r), 6));
        rows.push_back(std::move(row));
    }
    return {{"focus", map.focus},
        {"origin", {{"x", round_decimals(map.origin.x, 3)}, {"y", round_decimals(map.origin.y, 3)}}},
        {"cell_size", round_decimals(map.cell_size, 3)}, {"columns", map.columns},
        {"rows", map.rows}, {"cells", std::move(rows)},
        {"focus_cell", {{"column", map.focus_column}, {"row", map.focus_row}}},
        {"min", round_decimals(map.min_value, 6)}, {"max", round_decimals(map.max_value, 6)},
        {"misplaced", map.misplaced}};
}

json compactness_guide_to_json(const CompactnessGuide &guide)
{
    return {{"bbox", rect_to_json(guide.bbox, Precision::display)},
        {"boundary_words", guide.boundary_words}};
}

json force_config_to_json(const ForceConfig &c)
{
    return {{"iterations", c.iterations}, {"attraction_gain", c.attraction_gain},
        {"centering_gain", c.centering_gain},
        {"decay", c.decay == Decay::linear ? "linear" : "constant"},
        {"overlap_tolerance", c.overlap_tolerance}, {"rng_seed", c.rng_seed},
        {"resolution_passes", c.resolution_passes}, {"step_cap", c.step_cap},
        {"canvas_scale", c.canvas_scale}};
}

ForceConfig force_config_from_json(const json &doc, ForceConfig c)
{
    return schema_guard([&] {
        if (!doc.is_object())
            throw Error(errc::schema, "force config must be an object");
        if (doc.contains("iterations"))
            c.iterations = static_cast<int>(index(doc, "iterations"));
        if (doc.contains("attraction_gain"))
            c.attraction_gain = number(doc, "attraction_gain");
        if (doc.contains("centering_gain"))
            c.centering_gain = number(doc, "centering_gain");
        if (doc.contains("decay")) {
            const std::string d = text(doc, "decay");
            if (d != "linear" && d != "constant")
                throw Error(errc::schema, "decay must be 'linear' or 'constant'");
            c.decay = d == "linear" ? Decay::linear : Decay::constant;
        }
        if (doc.contains("overlap_tolerance"))
            c.overlap_tolerance = number(doc, "overlap_tolerance");
        if (doc.contains("rng_seed"))
            c.rng_seed = member(doc, "rng_seed").get<std::uint64_t>();
        if (doc.contains("resolution_passes"))
            c.resolution_passes = static_cast<int>(index(doc, "resolution_passes"));
        if (doc.contains("step_cap"))
            c.step_cap = number(doc, "step_cap");
        if (doc.contains("canvas_scale"))
            c.canvas_scale = number(doc, "canvas_scale");
        return c;
    });
}

json interaction_config_to_json(const InteractionConfig &c)
{
    return {{"theta", c.theta}, {"anchor_gain", c.anchor_gain},
        {"fill_iterations", c.fill_iterations}, {"rng_seed", c.rng_seed},
        {"history_limit", c.history_limit}, {"follow_max_sweeps", c.follow_max_sweeps},
        {"move_resolution_passes", c.move_resolution_passes},
        {"force", force_config_to_json(c.force)}};
}

InteractionConfig interaction_config_from_json(const json &doc, InteractionConfig c)
{
    return schema_guard([&] {
        if (!doc.is_object())
            throw Error(errc::schema, "interaction config must be an object");
        if (doc.contains("theta"))
            c.theta = number(doc, "theta");
        if (doc.contains("anchor_gain"))
            c.anchor_gain = number(doc, "anchor_gain");
        if (doc.contains("fill_iterations"))
            c.fill_iterations = static_cast<int>(index(doc, "fill_iterations"));
        if (doc.contains("rng_seed"))
            c.rng_seed = member(doc, "rng_seed").get<std::uint64_t>();
        if (doc.contains("history_limit"))
            c.history_limit = index(doc, "history_limit");
        if (doc.contains("follow_max_sweeps"))
            c.follow_max_sweeps = static_cast<int>(index(doc, "follow_max_sweeps"));
        if (doc.contains("move_resolution_passes"))
            c.move_resolution_passes = static_cast<int>(index(doc, "move_resolution_passes"));
        if (doc.contains("force"))
            c.force = force_config_from_json(doc.at("force"), c.force);
        return c;
    });
}

namespace {

// Unrounded, with edge indices, so an imported session reports the same delta.
json report_to_json(const MetricReport &r)
{
    return {{"ra", r.realized_adjacencies}, {"distortion", r.distortion},
        {"compactness", r.compactness}, {"realized_edges", r.realized_edges},
        {"compactness_clamped", r.compactness_clamped}};
}

MetricReport report_from_json(const json &doc, const SimilarityGraph &graph)
{
    MetricReport r;
    r.realized_adjacencies = number(doc, "ra");
    r.distortion = number(doc, "distortion");
    r.compactness = number(doc, "compactness");
    for (const json &e : array(doc, "realized_edges")) {
        const auto i = e.get<std::size_t>();
        if (i >= graph.edges().size())
            throw Error(errc::schema, "realized edge index out of range");
        r.realized_edges.push_back(i);
    }
    r.compactness_clamped = member(doc, "compactness_clamped").get<bool>();
    return r;
}

}  // namespace

json export_session(const EditSession &session)
{
    const auto &g = session.graph();
    json history = json::array();
    for (const auto &l : session.history())
        history.push_back(layout_to_json(g, l, Precision::exact));
    json saved = json::object();
    for (const auto &[name, l] : session.saved())
        saved[name] = layout_to_json(g, l, Precision::exact);
    json best = json::object();
    for (const auto &[metric, snap] : session.best())
        best[metric_name(metric)] = {
            {"value", snap.value}, {"layout", layout_to_json(g, snap.layout, Precision::exact)}};
    json out = {{"format", kSessionFormat}, {"graph", graph_to_json(g, Precision::exact)},
        {"current", layout_to_json(g, session.current(), Precision::exact)},
        {"history", std::move(history)}, {"saved", std::move(saved)}, {"best", std::move(best)},
        {"config", interaction_config_to_json(session.config())}};
    if (session.previous_metrics())
        out["previous_metrics"] = report_to_json(*session.previous_metrics());
    return out;
}

EditSession import_session(const json &bundle)
{
    return schema_guard([&] {
        if (!bundle.is_object() || bundle.value("format", "") != kSessionFormat)
            throw Error(errc::schema, std::string("session bundle must declare format ") +
                    kSessionFormat);
        SimilarityGraph graph = graph_from_json(member(bundle, "graph"));
        Layout current = layout_from_json(member(bundle, "current"), graph);
        InteractionConfig config = bundle.contains("config")
            ? interaction_config_from_json(bundle.at("config"))
            : InteractionConfig{};
        std::deque<Layout> history;
        if (bundle.contains("history")) {
            for (const json &l : array(bundle, "history"))
                history.push_back(layout_from_json(l, graph));
        }
        std::map<std::string, Layout> saved;
        if (bundle.contains("saved")) {
            for (const auto &[name, l] : member(bundle, "saved").items())
                saved.emplace(name, layout_from_json(l, graph));
        }
        std::map<Metric, BestSnapshot> best;
        if (bundle.contains("best")) {
            for (const auto &[name, snap] : member(bundle, "best").items())
                best.emplace(parse_metric(name),
                    BestSnapshot{number(snap, "value"), layout_from_json(member(snap, "layout"), graph)});
        }
        std::optional<MetricReport> previous;
        if (bundle.contains("previous_metrics"))
            previous = report_from_json(bundle.at("previous_metrics"), graph);
        return EditSession::restore(std::move(graph), std::move(current), std::move(config),
            std::move(history), std::move(saved), std::move(best), std::move(previous));
    });
}

std::string layout_to_svg(const SimilarityGraph &graph, const Layout &layout, bool draw_boxes)
{
    const Rect b = layout.bounds();
    const double margin = 10.0;
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(3);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << b.x - margin << ' '
        << b.y - margin << ' ' << b.w + 2 * margin << ' ' << b.h + 2 * margin << "\" width=\""
        << b.w + 2 * margin << "\" height=\"" << b.h + 2 * margin << "\">\n";
    if (draw_boxes) {
        out << "  <g fill=\"none\" stroke=\"#999999\" stroke-width=\"0.5\">\n";
        for (TermId i = 0; i < layout.size(); ++i) {
            const Box box = layout.box(i);
            out << "    <rect x=\"" << box.left() << "\" y=\"" << box.bottom() << "\" width=\""
                << box.size.w << "\" height=\"" << box.size.h << "\"/>\n";
        }
        out << "  </g>\n";
    }
    out << "  <g font-family=\"sans-serif\" text-anchor=\"middle\" dominant-baseline=\"central\">\n";
    for (TermId i = 0; i < layout.size(); ++i) {
        const Term &t = graph.term(i);
        out << "    <text x=\"" << layout.positions[i].x << "\" y=\"" << layout.positions[i].y
            << "\" font-size=\"" << t.font_size << "\">" << xml_escape(t.surface) << "</text>\n";
    }
    out << "  </g>\n</svg>\n";
    return out.str();
}

}  // namespace semcloud
