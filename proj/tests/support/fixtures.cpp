#include "fixtures.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "semcloud/pipeline.hpp"
#include "semcloud/text_pipeline.hpp"

namespace fixture {

std::string data_path(const std::string &relative)
{
    return std::string(SEMCLOUD_TEST_DATA_DIR) + "/" + relative;
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const std::vector<std::string> &corpus_names()
{
    static const std::vector<std::string> names{"visualization", "rivers", "bread"};
    return names;
}

std::string corpus_text(const std::string &name)
{
    return read_file(data_path("corpus/" + name + ".txt"));
}

SimilarityGraph make_graph(const std::vector<Size> &boxes, std::vector<Edge> edges)
{
    std::vector<semcloud::Term> terms;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        semcloud::Term t;
        t.surface = "w" + std::to_string(i);
        t.stem = t.surface;
        t.frequency = 1;
        t.font_size = 10;
        t.box_width = boxes[i].w;
        t.box_height = boxes[i].h;
        terms.push_back(t);
    }
    return SimilarityGraph(std::move(terms), std::move(edges));
}

Layout make_layout(const SimilarityGraph &graph, const std::vector<Vec2> &positions)
{
    Layout l = Layout::from_graph(graph);
    l.positions = positions;
    return l;
}

std::uint64_t Random::next()
{
    // splitmix64
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double Random::uniform(double lo, double hi)
{
    return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::size_t Random::below(std::size_t n)
{
    return static_cast<std::size_t>(next() % n);
}

Scene random_scene(std::uint64_t seed, std::size_t max_words)
{
    Random rng(seed);
    const std::size_t n = 2 + rng.below(max_words - 1);
    std::vector<Size> boxes;
    for (std::size_t i = 0; i < n; ++i)
        boxes.push_back({std::round(rng.uniform(10, 60)), std::round(rng.uniform(8, 24))});
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (rng.chance(0.6))
                edges.push_back({u, v, rng.uniform(0.01, 1.0)});
        }
    }
    Scene s{make_graph(boxes, edges), {}};
    std::vector<Vec2> pos;
    const double side = 25.0 * std::sqrt(static_cast<double>(n)) + 20.0;
    for (std::size_t i = 0; i < n; ++i)
        pos.push_back({rng.uniform(-side, side), rng.uniform(-side, side)});
    // Snap some words into exact contact with an earlier one.
    for (std::size_t i = 1; i < n; ++i) {
        if (!rng.chance(0.35))
            continue;
        const std::size_t j = rng.below(i);
        if (rng.chance(0.5))
            pos[i] = {pos[j].x + (boxes[i].w + boxes[j].w) / 2, pos[j].y + rng.uniform(-4, 4)};
        else
            pos[i] = {pos[j].x + rng.uniform(-4, 4), pos[j].y - (boxes[i].h + boxes[j].h) / 2};
    }
    s.layout = make_layout(s.graph, pos);
    return s;
}

SimilarityGraph random_graph(std::uint64_t seed, std::size_t n, double edge_probability)
{
    Random rng(seed);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (rng.chance(edge_probability))
                edges.push_back({u, v, rng.uniform(0.01, 0.99)});
        }
    }
    return make_graph(std::vector<Size>(n, Size{40, 12}), edges);
}

FollowScene follow_scene()
{
    const std::vector<Size> boxes(8, Size{40, 12});
    std::vector<Edge> edges{
        {0, 1, 0.6},
        {0, 2, 0.6},
        {2, 3, 0.8},
        {2, 4, 0.8},
        {2, 5, 0.8},
        {1, 6, 0.05},
        {6, 7, 0.3},
    };
    FollowScene f;
    f.scene.graph = make_graph(boxes, edges);
    f.scene.layout = make_layout(f.scene.graph,
        {{0, 0}, {-80, 0}, {80, 0}, {40, -120}, {90, -120}, {140, -120}, {-160, 60}, {0, -250}});
    f.target = {0, 150};
    return f;
}

semcloud::EditSession hole_session()
{
    semcloud::CloudConfig config;
    config.k = 20;
    const semcloud::Cloud cloud =
        semcloud::build_cloud(corpus_text("bread"), config, semcloud::default_stopwords());
    semcloud::EditSession session(cloud.graph, cloud.layout);

    const Layout &l = session.current();
    Vec2 centroid;
    for (const Vec2 &p : l.positions)
        centroid += p;
    centroid *= 1.0 / static_cast<double>(l.size());
    semcloud::TermId central = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < l.size(); ++i) {
        const double d = (l.positions[i] - centroid).norm();
        if (d < best) {
            best = d;
            central = i;
        }
    }
    const semcloud::Rect bounds = l.bounds();
    session.move_word(central, {bounds.x + bounds.w + 150, centroid.y});
    return session;
}

Scene six_word_scene()
{
    auto g = make_graph({{30, 10}, {20, 12}, {44, 14}, {18, 9}, {25, 11}, {36, 16}},
        {{0, 1, 0.8}, {0, 2, 0.3}, {1, 2, 0.55}, {1, 3, 0.2}, {2, 4, 0.65}, {3, 4, 0.1},
            {3, 5, 0.45}, {4, 5, 0.9}, {0, 5, 0.15}});
    auto l = make_layout(g, {{0, 0}, {30, 4}, {-10, 30}, {70, -20}, {20, 60}, {60, 40}});
    return {std::move(g), std::move(l)};
}

// Hand-built graphs; expected members worked out from the join rule with theta 0.1.
const std::vector<TreeCase> &tree_cases()
{
    static const std::vector<TreeCase> cases{
        {"star with one weak spoke", 4, {{0, 1, 0.5}, {0, 2, 0.1}, {0, 3, 0.09}},
            {{1, 0, 1, 0.5}, {2, 0, 1, 0.1}}},
        {"chain cut at depth four", 5, {{0, 1, 0.5}, {1, 2, 0.3}, {2, 3, 0.4}, {3, 4, 0.35}},
            {{1, 0, 1, 0.5}, {2, 1, 2, 0.3}, {3, 2, 3, 0.4}}},
        {"grandchild below the depth-scaled bar", 3, {{0, 1, 0.5}, {1, 2, 0.15}},
            {{1, 0, 1, 0.5}}},
        {"strong grandchild behind a weak parent", 3, {{0, 1, 0.05}, {1, 2, 0.9}}, {}},
        {"heavier parent discovers first", 4, {{0, 1, 0.9}, {0, 2, 0.3}, {1, 3, 0.25}, {2, 3, 0.8}},
            {{1, 0, 1, 0.9}, {2, 0, 1, 0.3}, {3, 1, 2, 0.25}}},
        {"first discovery is final even when it fails", 4,
            {{0, 1, 0.9}, {0, 2, 0.05}, {1, 3, 0.1}, {2, 3, 0.9}}, {{1, 0, 1, 0.9}}},
        {"excluded depth-2 vertex blocks its subtree", 6,
            {{0, 1, 0.9}, {0, 2, 0.5}, {1, 3, 0.15}, {2, 4, 0.5}, {3, 5, 0.9}, {4, 5, 0.9}},
            {{1, 0, 1, 0.9}, {2, 0, 1, 0.5}, {4, 2, 2, 0.5}}},
        {"ratios exactly at theta join", 3, {{0, 1, 0.1}, {1, 2, 0.2}},
            {{1, 0, 1, 0.1}, {2, 1, 2, 0.2}}},
        {"other component is never reached", 4, {{0, 1, 0.5}, {2, 3, 0.9}}, {{1, 0, 1, 0.5}}},
        {"equal weights visit by ordinal", 5,
            {{0, 3, 0.4}, {0, 1, 0.4}, {0, 2, 0.4}, {1, 4, 0.3}, {3, 4, 0.3}},
            {{1, 0, 1, 0.4}, {2, 0, 1, 0.4}, {3, 0, 1, 0.4}, {4, 1, 2, 0.3}}},
    };
    return cases;
}

}  // namespace fixture
