#include "semcloud/metric_guides.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "semcloud/error.hpp"

namespace semcloud {
namespace {

void require_term(const SimilarityGraph &graph, TermId id)
{
    if (!graph.contains(id))
        throw Error(errc::unknown_term, "unknown term id " + std::to_string(id));
}

// Number of whole cells needed to cover `extent` (tolerates rounding noise).
std::size_t cells_to_cover(double extent, double cell)
{
    if (extent <= 0.0)
        return 0;
    const double q = extent / cell;
    const double r = std::round(q);
    if (std::abs(q - r) < 1e-9)
        return static_cast<std::size_t>(r);
    return static_cast<std::size_t>(std::ceil(q));
}

}  // namespace

AdjacencyGuide adjacency_guide(const SimilarityGraph &graph, const Layout &layout,
    std::optional<TermId> focus)
{
    if (focus)
        require_term(graph, *focus);

    AdjacencyGuide guide;
    guide.focus = focus;
    const auto edges = graph.edges();
    const auto [ra, realized] = realized_adjacencies(graph, layout);
    std::vector<bool> is_realized(edges.size(), false);
    for (std::size_t idx : realized) {
        is_realized[idx] = true;
        guide.realized.push_back({edges[idx].u, edges[idx].v, edges[idx].weight, true});
    }

    if (focus) {
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const Edge &e = edges[i];
            if (e.u == *focus || e.v == *focus)
                guide.focus_edges.push_back({e.u, e.v, e.weight, is_realized[i]});
        }
        return guide;
    }

    std::vector<GuideEdge> missed;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!is_realized[i])
            missed.push_back({edges[i].u, edges[i].v, edges[i].weight, false});
    }
    std::sort(missed.begin(), missed.end(), [](const GuideEdge &a, const GuideEdge &b) {
        if (a.weight != b.weight)
            return a.weight > b.weight;
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    if (missed.size() > kTopMissedEdges)
        missed.resize(kTopMissedEdges);
    guide.top_missed = std::move(missed);
    return guide;
}

DistortionHeatMap distortion_heatmap(const SimilarityGraph &graph, const Layout &layout,
    TermId focus, int grid)
{
    require_term(graph, focus);
    if (grid < 2)
        throw Error(errc::invalid_argument, "heat map grid must be at least 2");

    DistortionHeatMap map;
    map.focus = focus;
    const Rect bounds = layout.bounds();
    const double longer = std::max(bounds.w, bounds.h);
    map.cell_size = longer / grid;

    const Vec2 f = layout.positions[focus];
    const double half = map.cell_size / 2;
    const std::size_t left = cells_to_cover(f.x - half - bounds.x, map.cell_size);
    const std::size_t right = cells_to_cover(bounds.x + bounds.w - (f.x + half), map.cell_size);
    const std::size_t below = cells_to_cover(f.y - half - bounds.y, map.cell_size);
    const std::size_t above = cells_to_cover(bounds.y + bounds.h - (f.y + half), map.cell_size);
    map.columns = left + 1 + right;
    map.rows = below + 1 + above;
    map.focus_column = left;
    map.focus_row = below;
    map.origin = {f.x - half - static_cast<double>(left) * map.cell_size,
        f.y - half - static_cast<double>(below) * map.cell_size};

    // Edges not touching the focus keep their distances in every cell.
    PairedMoments fixed;
    struct Incident {
        TermId other;
        double dissimilarity;
    };
    std::vector<Incident> incident;
    for (const Edge &e : graph.edges()) {
        if (e.u == focus || e.v == focus) {
            incident.push_back({e.u == focus ? e.v : e.u, 1.0 - e.weight});
        } else {
            fixed.add(1.0 - e.weight, gap_distance(layout.box(e.u), layout.box(e.v)));
        }
    }

    const Size focus_size = layout.sizes[focus];
    map.cells.resize(map.columns * map.rows);
    for (std::size_t row = 0; row < map.rows; ++row) {
        for (std::size_t col = 0; col < map.columns; ++col) {
            const Box moved{map.cell_center(col, row), focus_size};
            PairedMoments moments;
            for (const auto &inc : incident)
                moments.add(inc.dissimilarity, gap_distance(moved, layout.box(inc.other)));
            moments.merge(fixed);
            map.cells[row * map.columns + col] = moments.distortion();
        }
    }
    const auto [lo, hi] = std::minmax_element(map.cells.begin(), map.cells.end());
    map.min_value = *lo;
    map.max_value = *hi;
    map.misplaced = misplaced_words(graph, layout);
    return map;
}

std::vector<double> misplacement_penalties(const SimilarityGraph &graph, const Layout &layout)
{
    const std::size_t n = layout.size();
    std::vector<double> sums(n, 0.0);
    double longest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j)
            longest = std::max(longest, (layout.positions[i] - layout.positions[j]).norm());
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = graph.weight(i, j);
            const double ideal = (1.0 - s) * longest / 2;
            const double diff = ideal - (layout.positions[i] - layout.positions[j]).norm();
            const double penalty = (s < kUnrelatedThreshold && diff > 0.0) ? diff * diff
                                                                            : std::abs(diff);
            sums[i] += penalty;
            sums[j] += penalty;
        }
    }
    return sums;
}

std::vector<TermId> misplaced_words(const SimilarityGraph &graph, const Layout &layout)
{
    if (layout.size() < 2)
        return {};
    const auto sums = misplacement_penalties(graph, layout);
    std::vector<TermId> order(sums.size());
    std::iota(order.begin(), order.end(), TermId{0});
    std::stable_sort(order.begin(), order.end(),
        [&](TermId a, TermId b) { return sums[a] > sums[b]; });
    if (order.size() > kMisplacedWords)
        order.resize(kMisplacedWords);
    return order;
}

CompactnessGuide compactness_guide(const Layout &layout)
{
    if (layout.empty())
        throw Error(errc::invalid_argument, "compactness guide of an empty layout");
    CompactnessGuide guide;
    guide.bbox = layout.bounds();
    const Rect &r = guide.bbox;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        const Box b = layout.box(i);
        if (b.left() - r.x <= kBoundaryTolerance || (r.x + r.w) - b.right() <= kBoundaryTolerance ||
            b.bottom() - r.y <= kBoundaryTolerance || (r.y + r.h) - b.top() <= kBoundaryTolerance)
            guide.boundary_words.push_back(i);
    }
    return guide;
}

}  // namespace semcloud
