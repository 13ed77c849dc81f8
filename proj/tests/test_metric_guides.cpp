#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "semcloud/error.hpp"
#include "semcloud/metric_guides.hpp"
#include "semcloud/serialization.hpp"

using namespace semcloud;
using fixture::make_graph;
using fixture::make_layout;

namespace {

errc code_of(auto &&fn)
{
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    FAIL("no error thrown");
    return errc::schema;
}

// Same scene with word i renamed to perm[i].
fixture::Scene relabeled(const fixture::Scene &s, const std::vector<TermId> &perm)
{
    const std::size_t n = s.layout.size();
    std::vector<Size> boxes(n);
    std::vector<Vec2> positions(n);
    for (std::size_t i = 0; i < n; ++i) {
        boxes[perm[i]] = s.layout.sizes[i];
        positions[perm[i]] = s.layout.positions[i];
    }
    std::vector<Edge> edges;
    for (const Edge &e : s.graph.edges())
        edges.push_back({perm[e.u], perm[e.v], e.weight});
    auto g = make_graph(boxes, edges);
    auto l = make_layout(g, positions);
    return {std::move(g), std::move(l)};
}

void check_heatmap_against_oracle(const SimilarityGraph &g, const Layout &l, TermId focus, int grid)
{
    const auto map = distortion_heatmap(g, l, focus, grid);
    REQUIRE(map.cells.size() == map.columns * map.rows);
    for (std::size_t row = 0; row < map.rows; ++row) {
        for (std::size_t col = 0; col < map.columns; ++col) {
            const double want = oracle::distortion_with(g, l, focus, map.cell_center(col, row));
            CHECK(std::abs(map.at(col, row) - want) <= 1e-9);
            CHECK(map.at(col, row) >= 0.0);
            CHECK(map.at(col, row) <= 1.0);
        }
    }
    CHECK(std::abs(map.at(map.focus_column, map.focus_row) - distortion(g, l)) <= 1e-9);
}

}  // namespace

TEST_CASE("all edges realized leaves nothing missed")
{
    const auto g = make_graph({{10, 10}, {10, 10}, {10, 10}}, {{0, 1, 0.4}, {1, 2, 0.6}});
    const auto guide = adjacency_guide(g, make_layout(g, {{0, 0}, {10, 0}, {20, 0}}));
    CHECK(guide.realized.size() == 2);
    CHECK(guide.top_missed.empty());
    CHECK_FALSE(guide.focus.has_value());
}

TEST_CASE("twelve unrealized edges keep the ten heaviest")
{
    std::vector<Size> boxes(13, Size{10, 10});
    std::vector<Edge> edges;
    std::vector<Vec2> positions{{0, 0}};
    for (TermId i = 1; i <= 12; ++i) {
        edges.push_back({0, i, 0.05 * static_cast<double>(i)});
        positions.push_back({200.0 * std::cos(i * 0.5), 200.0 * std::sin(i * 0.5)});
    }
    const auto g = make_graph(boxes, edges);
    const auto guide = adjacency_guide(g, make_layout(g, positions));
    REQUIRE(guide.top_missed.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(guide.top_missed[i].v == 12 - i);
        CHECK_FALSE(guide.top_missed[i].realized);
    }
}

TEST_CASE("missed-edge ties fall back to vertex ordinals")
{
    const auto g = make_graph(std::vector<Size>(4, Size{10, 10}),
        {{2, 3, 0.5}, {0, 3, 0.5}, {0, 1, 0.5}});
    const auto guide = adjacency_guide(g, make_layout(g, {{0, 0}, {100, 0}, {0, 100}, {100, 100}}));
    REQUIRE(guide.top_missed.size() == 3);
    CHECK(guide.top_missed[0] == GuideEdge{0, 1, 0.5, false});
    CHECK(guide.top_missed[1] == GuideEdge{0, 3, 0.5, false});
    CHECK(guide.top_missed[2] == GuideEdge{2, 3, 0.5, false});
}

TEST_CASE("focus on a degree-6 word with one realized adjacency")
{
    std::vector<Size> boxes(8, Size{20, 10});
    std::vector<Edge> edges{{1, 2, 0.9}};
    for (TermId i = 1; i <= 6; ++i)
        edges.push_back({0, i, 0.1 * static_cast<double>(i)});
    edges.push_back({6, 7, 0.7});
    const auto g = make_graph(boxes, edges);
    // Word 1 touches the focus; the others sit well away.
    const auto l = make_layout(g, {{0, 0}, {20, 0}, {0, 120}, {-150, 0}, {0, -150}, {150, 150},
                                      {-150, 150}, {-150, 300}});
    const auto guide = adjacency_guide(g, l, TermId{0});
    CHECK(guide.focus == TermId{0});
    CHECK(guide.top_missed.empty());
    REQUIRE(guide.focus_edges.size() == 6);
    CHECK(std::count_if(guide.focus_edges.begin(), guide.focus_edges.end(),
              [](const GuideEdge &e) { return e.realized; }) == 1);
    for (const auto &e : guide.focus_edges)
        CHECK((e.u == 0 || e.v == 0));
    // The weak focus edges still show up: incident edges are listed regardless of weight.
    CHECK(std::any_of(guide.focus_edges.begin(), guide.focus_edges.end(),
        [](const GuideEdge &e) { return e.weight == doctest::Approx(0.2); }));
}

TEST_CASE("unknown focus word")
{
    const auto g = make_graph({{10, 10}, {10, 10}}, {{0, 1, 0.5}});
    const auto l = make_layout(g, {{0, 0}, {50, 0}});
    CHECK(code_of([&] { adjacency_guide(g, l, TermId{7}); }) == errc::unknown_term);
    CHECK(code_of([&] { distortion_heatmap(g, l, 7); }) == errc::unknown_term);
    CHECK(code_of([&] { distortion_heatmap(g, l, 0, 1); }) == errc::invalid_argument);
}

TEST_CASE("guide realized edges are exactly the metric's realized edges")
{
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto s = fixture::random_scene(seed);
        const auto report = evaluate(s.graph, s.layout);
        const auto guide = adjacency_guide(s.graph, s.layout);
        REQUIRE(guide.realized.size() == report.realized_edges.size());
        for (std::size_t i = 0; i < guide.realized.size(); ++i) {
            const Edge &e = s.graph.edges()[report.realized_edges[i]];
            CHECK(guide.realized[i] == GuideEdge{e.u, e.v, e.weight, true});
        }
        for (const auto &m : guide.top_missed) {
            CHECK(std::none_of(guide.realized.begin(), guide.realized.end(),
                [&](const GuideEdge &r) { return r.u == m.u && r.v == m.v; }));
        }
        for (std::size_t i = 1; i < guide.top_missed.size(); ++i)
            CHECK(guide.top_missed[i - 1].weight >= guide.top_missed[i].weight);
    }
}

TEST_CASE("closing the top missed edge raises realized adjacencies")
{
    const auto g = make_graph({{30, 10}, {20, 10}, {40, 12}, {16, 8}},
        {{0, 1, 0.3}, {1, 2, 0.5}, {0, 2, 0.2}, {2, 3, 0.1}});
    auto l = make_layout(g, {{0, 0}, {25, 0}, {0, 200}, {-200, 0}});
    const double before = realized_adjacencies(g, l).first;
    const auto guide = adjacency_guide(g, l);
    REQUIRE_FALSE(guide.top_missed.empty());
    const GuideEdge top = guide.top_missed.front();
    CHECK(top == GuideEdge{1, 2, 0.5, false});
    // Put the second endpoint flush on top of the first.
    const Box anchor = l.box(top.u);
    l.positions[top.v] = {anchor.center.x, anchor.top() + l.sizes[top.v].h / 2};
    CHECK(realized_adjacencies(g, l).first > before);
}

TEST_CASE("focus word without edges gives a flat heat map")
{
    const auto g = make_graph({{20, 10}, {20, 10}, {20, 10}, {15, 8}}, {{0, 1, 0.6}, {1, 2, 0.3}, {0, 2, 0.1}});
    const auto l = make_layout(g, {{0, 0}, {25, 10}, {-20, 40}, {80, -30}});
    const auto map = distortion_heatmap(g, l, 3, 12);
    const double current = distortion(g, l);
    for (double v : map.cells)
        CHECK(std::abs(v - current) <= 1e-12);
    CHECK(map.max_value - map.min_value <= 1e-12);
}

TEST_CASE("three-word line: every cell matches per-cell recomputation")
{
    const auto g = make_graph({{20, 10}, {20, 10}, {20, 10}}, {{0, 1, 0.7}, {1, 2, 0.4}, {0, 2, 0.1}});
    const auto l = make_layout(g, {{0, 0}, {60, 0}, {120, 0}});
    check_heatmap_against_oracle(g, l, 1, 30);

    // The best cell is the best hypothetical placement on the grid.
    const auto map = distortion_heatmap(g, l, 1, 30);
    double best = 0.0;
    for (std::size_t r = 0; r < map.rows; ++r)
        for (std::size_t c = 0; c < map.columns; ++c)
            best = std::max(best, oracle::distortion_with(g, l, 1, map.cell_center(c, r)));
    CHECK(std::abs(map.max_value - best) <= 1e-9);
}

TEST_CASE("six-word heat map on a 20-cell grid")
{
    const auto s = fixture::six_word_scene();
    for (TermId focus = 0; focus < 6; ++focus) {
        CAPTURE(focus);
        check_heatmap_against_oracle(s.graph, s.layout, focus, 20);
    }
}

TEST_CASE("heat map grid geometry")
{
    const auto s = fixture::six_word_scene();
    const auto map = distortion_heatmap(s.graph, s.layout, 2, 20);
    const Rect r = s.layout.bounds();
    CHECK(map.cell_size == doctest::Approx(std::max(r.w, r.h) / 20));
    CHECK(map.origin.x <= r.x + 1e-9);
    CHECK(map.origin.y <= r.y + 1e-9);
    CHECK(map.origin.x + map.columns * map.cell_size >= r.x + r.w - 1e-9);
    CHECK(map.origin.y + map.rows * map.cell_size >= r.y + r.h - 1e-9);
    const Vec2 c = map.cell_center(map.focus_column, map.focus_row);
    CHECK(c.x == doctest::Approx(s.layout.positions[2].x));
    CHECK(c.y == doctest::Approx(s.layout.positions[2].y));
    CHECK(map.misplaced == misplaced_words(s.graph, s.layout));
    CHECK(*std::min_element(map.cells.begin(), map.cells.end()) == map.min_value);
    CHECK(*std::max_element(map.cells.begin(), map.cells.end()) == map.max_value);
}

TEST_CASE("penalties vanish at the ideal length")
{
    // D = 100 from words 0 and 2; words 0 and 1 sit exactly at (1 - 0.5) * D / 2.
    const auto g = make_graph({{4, 4}, {4, 4}, {4, 4}}, {{0, 1, 0.5}, {1, 2, 0.5}});
    const auto p = misplacement_penalties(g, make_layout(g, {{0, 0}, {25, 0}, {100, 0}}));
    CHECK(p[0] == doctest::Approx(50));  // only the unrelated pair (0, 2), too far by 50
    CHECK(p[1] == doctest::Approx(50));  // only the pair (1, 2), too far by 50
    CHECK(p[2] == doctest::Approx(100));
}

TEST_CASE("unrelated words that sit too close are penalized quadratically")
{
    const auto g = make_graph({{4, 4}, {4, 4}, {4, 4}}, {});
    const auto p = misplacement_penalties(g, make_layout(g, {{0, 0}, {10, 0}, {100, 0}}));
    // Pair (0, 1): ideal 50, actual 10 -> (0.4 D)^2 = 1600.
    CHECK(p[0] == doctest::Approx(1600 + 50));
    CHECK(p[1] == doctest::Approx(1600 + 40));
    CHECK(p[2] == doctest::Approx(50 + 40));
    CHECK(misplaced_words(g, make_layout(g, {{0, 0}, {10, 0}, {100, 0}})) ==
          std::vector<TermId>{0, 1, 2});
}

TEST_CASE("ten-word misplaced ranking matches an exhaustive oracle")
{
    int checked = 0;
    for (std::uint64_t seed = 1; checked < 5; ++seed) {
        const auto s = fixture::random_scene(seed, 10);
        if (s.layout.size() != 10)
            continue;
        ++checked;
        const auto got = misplacement_penalties(s.graph, s.layout);
        const auto want = oracle::misplacement_penalties(s.graph, s.layout);
        for (std::size_t i = 0; i < 10; ++i)
            CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
        const auto top = misplaced_words(s.graph, s.layout);
        CHECK(top.size() == 5);
        CHECK(top == oracle::misplaced_words(s.graph, s.layout));
    }
}

TEST_CASE("misplaced words follow a relabeling of the vertices")
{
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const auto s = fixture::random_scene(seed, 10);
        const std::size_t n = s.layout.size();
        std::vector<TermId> perm(n);
        std::iota(perm.begin(), perm.end(), TermId{0});
        fixture::Random rng(seed);
        for (std::size_t i = n; i > 1; --i)
            std::swap(perm[i - 1], perm[rng.below(i)]);

        const auto before = misplacement_penalties(s.graph, s.layout);
        const auto moved = relabeled(s, perm);
        const auto after = misplacement_penalties(moved.graph, moved.layout);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(after[perm[i]] == doctest::Approx(before[i]).epsilon(1e-12));

        std::set<TermId> want;
        for (TermId id : misplaced_words(s.graph, s.layout))
            want.insert(perm[id]);
        const auto top = misplaced_words(moved.graph, moved.layout);
        const std::set<TermId> got(top.begin(), top.end());
        // Words tied at the cut-off may legitimately swap.
        std::vector<double> sorted = before;
        std::sort(sorted.rbegin(), sorted.rend());
        const bool tie_at_cut = n > 5 && std::abs(sorted[4] - sorted[5]) <= 1e-9 * (1 + sorted[4]);
        if (!tie_at_cut)
            CHECK(got == want);
    }
}

TEST_CASE("fewer than two words have no misplaced ranking")
{
    const auto g = make_graph({{4, 4}}, {});
    CHECK(misplaced_words(g, make_layout(g, {{0, 0}})).empty());
}

TEST_CASE("compactness guide")
{
    SUBCASE("single word is the boundary")
    {
        const auto g = make_graph({{30, 12}}, {});
        const auto guide = compactness_guide(make_layout(g, {{5, 5}}));
        CHECK(guide.boundary_words == std::vector<TermId>{0});
        CHECK(guide.bbox.w == 30);
        CHECK(guide.bbox.h == 12);
    }
    SUBCASE("3x3 grid highlights the outer ring")
    {
        const auto g = make_graph(std::vector<Size>(9, Size{10, 10}), {});
        std::vector<Vec2> pos;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                pos.push_back({10.0 * c, 10.0 * r});
        const auto guide = compactness_guide(make_layout(g, pos));
        CHECK(guide.boundary_words == std::vector<TermId>{0, 1, 2, 3, 5, 6, 7, 8});
    }
    SUBCASE("empty layout")
    {
        CHECK(code_of([] { compactness_guide(Layout{}); }) == errc::invalid_argument);
    }
}

TEST_CASE("boundary words of the 50-word golden layout")
{
    const auto graph = graph_from_json(
        json::parse(fixture::read_file(fixture::data_path("golden/visualization.graph.json"))));
    const auto layout = layout_from_json(
        json::parse(fixture::read_file(fixture::data_path("golden/visualization.layout.json"))), graph);
    const auto guide = compactness_guide(layout);
    std::vector<std::string> names;
    for (TermId id : guide.boundary_words)
        names.push_back(graph.term(id).surface);
    // Bottom, top, left and right extremes as seen in the rendered fixture.
    CHECK(names == std::vector<std::string>{"words", "layout", "color", "interactive"});
    const Rect r = guide.bbox;
    for (TermId id : guide.boundary_words) {
        const Box b = layout.box(id);
        CHECK(std::min({b.left() - r.x, r.x + r.w - b.right(), b.bottom() - r.y, r.y + r.h - b.top()}) <=
              kBoundaryTolerance);
    }
}
