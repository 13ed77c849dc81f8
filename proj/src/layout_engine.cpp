#include "semcloud/layout_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "semcloud/error.hpp"

namespace semcloud {
namespace {

// Portable [0, 1) draw; std::uniform_real_distribution is implementation-defined.
double unit_draw(std::mt19937_64 &rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Vec2 capped(Vec2 d, double cap)
{
    const double len = d.norm();
    if (len > cap && len > 0.0)
        return d * (cap / len);
    return d;
}

}  // namespace

Layout Layout::from_graph(const SimilarityGraph &graph)
{
    Layout layout;
    layout.positions.assign(graph.vertex_count(), Vec2{});
    layout.sizes.reserve(graph.vertex_count());
    for (const auto &t : graph.terms())
        layout.sizes.push_back({t.box_width, t.box_height});
    return layout;
}

Rect Layout::bounds() const
{
    if (empty())
        return {};
    double x0 = std::numeric_limits<double>::infinity();
    double y0 = x0;
    double x1 = -x0;
    double y1 = -x0;
    for (std::size_t i = 0; i < size(); ++i) {
        const Box b = box(i);
        x0 = std::min(x0, b.left());
        x1 = std::max(x1, b.right());
        y0 = std::min(y0, b.bottom());
        y1 = std::max(y1, b.top());
    }
    return {x0, y0, x1 - x0, y1 - y0};
}

double Layout::average_box_height() const
{
    if (sizes.empty())
        return 0.0;
    double sum = 0.0;
    for (const auto &s : sizes)
        sum += s.h;
    return sum / static_cast<double>(sizes.size());
}

double decay_factor(Decay decay, int step, int iterations)
{
    switch (decay) {
    case Decay::constant:
        return 1.0;
    case Decay::linear:
        break;
    }
    return 1.0 - static_cast<double>(step) / static_cast<double>(iterations);
}

Dissimilarities target_dissimilarities(const SimilarityGraph &graph, double canvas_scale)
{
    const std::size_t n = graph.vertex_count();
    Dissimilarities d;
    d.n = n;
    d.target.assign(n * n, 0.0);
    d.weight.assign(n * n, 0.0);
    const double floor = 0.01 * canvas_scale;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            const auto e = graph.edge_index(i, j);
            const double target =
                e ? (1.0 - graph.edges()[*e].weight) * canvas_scale : canvas_scale;
            const double basis = std::max(target, floor);
            d.target[i * n + j] = target;
            d.weight[i * n + j] = basis > 0.0 ? 1.0 / (basis * basis) : 1.0;
        }
    }
    return d;
}

double stress(std::span<const Vec2> positions, const Dissimilarities &targets)
{
    double total = 0.0;
    for (std::size_t i = 0; i < targets.n; ++i) {
        for (std::size_t j = i + 1; j < targets.n; ++j) {
            const double r = (positions[i] - positions[j]).norm() - targets.distance(i, j);
            total += targets.stress_weight(i, j) * r * r;
        }
    }
    return total;
}

MdsResult stress_majorization(const Dissimilarities &targets, std::uint64_t seed,
    MdsOptions options)
{
    const std::size_t n = targets.n;
    MdsResult result;
    result.positions.resize(n);
    if (n == 0)
        return result;

    double span = 0.0;
    for (double t : targets.target)
        span = std::max(span, t);
    if (span <= 0.0)
        span = 1.0;

    std::mt19937_64 rng(seed);
    for (auto &p : result.positions) {
        p.x = (unit_draw(rng) - 0.5) * span;
        p.y = (unit_draw(rng) - 0.5) * span;
    }

    double current = stress(result.positions, targets);
    result.stress_history.push_back(current);
    auto &x = result.positions;

    for (int sweep = 0; sweep < options.max_sweeps && n > 1; ++sweep) {
        for (std::size_t i = 0; i < n; ++i) {
            Vec2 acc{};
            double total_weight = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i)
                    continue;
                const double w = targets.stress_weight(i, j);
                const Vec2 diff = x[i] - x[j];
                const double len = diff.norm();
                Vec2 term = x[j];
                if (len > 0.0)
                    term += diff * (targets.distance(i, j) / len);
                acc += term * w;
                total_weight += w;
            }
            if (total_weight > 0.0)
                x[i] = acc * (1.0 / total_weight);
        }
        const double next = stress(x, targets);
        result.stress_history.push_back(next);
        const double improvement = current > 0.0 ? (current - next) / current : 0.0;
        current = next;
        if (improvement < options.relative_tolerance)
            break;
    }
    return result;
}

double default_canvas_scale(const SimilarityGraph &graph, double factor)
{
    if (graph.vertex_count() == 0)
        return factor;
    double sum = 0.0;
    for (const auto &t : graph.terms())
        sum += t.box_height;
    return factor * sum / static_cast<double>(graph.vertex_count());
}

Layout mds_initialize(const SimilarityGraph &graph, double canvas_scale, std::uint64_t seed)
{
    if (graph.vertex_count() == 0)
        throw Error(errc::invalid_argument, "cannot lay out an empty graph");
    Layout layout = Layout::from_graph(graph);
    if (graph.vertex_count() == 1)
        return layout;

    auto mds = stress_majorization(target_dissimilarities(graph, canvas_scale), seed);
    Vec2 centroid{};
    for (const auto &p : mds.positions)
        centroid += p;
    centroid *= 1.0 / static_cast<double>(mds.positions.size());
    for (auto &p : mds.positions)
        p -= centroid;
    layout.positions = std::move(mds.positions);
    return layout;
}

Vec2 separation(const Box &a, const Box &b, TermId a_id, TermId b_id)
{
    const double ox = x_overlap(a, b);
    const double oy = y_overlap(a, b);
    if (ox <= 0.0 || oy <= 0.0)
        return {};
    const double dx = a.center.x - b.center.x;
    const double dy = a.center.y - b.center.y;
    const double by_ordinal = a_id < b_id ? -1.0 : 1.0;
    if (dx == 0.0 && dy == 0.0)
        return {by_ordinal * ox / 2, 0.0};
    if (ox > oy) {
        const double sign = dy > 0.0 ? 1.0 : dy < 0.0 ? -1.0 : by_ordinal;
        return {0.0, sign * oy / 2};
    }
    const double sign = dx > 0.0 ? 1.0 : dx < 0.0 ? -1.0 : by_ordinal;
    return {sign * ox / 2, 0.0};
}

std::vector<Vec2> apply_repulsion(const Layout &layout)
{
    const std::size_t n = layout.size();
    std::vector<Vec2> disp(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Box bi = layout.box(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec2 push = separation(bi, layout.box(j), i, j);
            disp[i] += push;
            disp[j] -= push;
        }
    }
    return disp;
}

std::vector<Vec2> apply_attraction(const SimilarityGraph &graph, const Layout &layout,
    double attraction_gain, double centering_gain)
{
    const auto &p = layout.positions;
    std::vector<Vec2> disp(layout.size());
    for (const Edge &e : graph.edges()) {
        const Vec2 pull = (p[e.v] - p[e.u]) * (e.weight * attraction_gain);
        disp[e.u] += pull;
        disp[e.v] -= pull;
    }
    for (std::size_t i = 0; i < layout.size(); ++i)
        disp[i] += p[i] * (-centering_gain);
    return disp;
}

int resolve_overlaps(Layout &layout, const std::vector<bool> &pinned, int max_passes)
{
    const std::size_t n = layout.size();
    auto is_pinned = [&](std::size_t i) { return i < pinned.size() && pinned[i]; };
    std::size_t pinned_count = 0;
    Vec2 pinned_center;
    for (std::size_t i = 0; i < n; ++i) {
        if (is_pinned(i)) {
            pinned_center += layout.positions[i];
            ++pinned_count;
        }
    }
    int active_passes = 0;
    for (int pass = 0; pass < max_passes; ++pass) {
        // Expand away from the pinned words if there are any: they cannot
        // yield, so the crowd around them has to.
        Vec2 centroid;
        if (pinned_count > 0) {
            centroid = pinned_center * (1.0 / static_cast<double>(pinned_count));
        } else {
            for (const Vec2 &p : layout.positions)
                centroid += p;
            centroid = centroid * (1.0 / static_cast<double>(n));
        }

        bool moved = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const Box bi = layout.box(i);
                const Box bj = layout.box(j);
                if (penetration(bi, bj) <= kContactEpsilon)
                    continue;
                const bool pi = is_pinned(i);
                const bool pj = is_pinned(j);
                if (pi && pj)
                    continue;
                // Full separation, split between the two words.
                const Vec2 push = separation(bi, bj, i, j) * 2.0;
                double share_j = 0.5;
                if (pi) {
                    share_j = 1.0;
                } else if (pj) {
                    share_j = 0.0;
                } else {
                    const double di = (layout.positions[i] - centroid).norm();
                    const double dj = (layout.positions[j] - centroid).norm();
                    if (dj > di)
                        share_j = kOuterShare;
                    else if (di > dj)
                        share_j = 1.0 - kOuterShare;
                }
                layout.positions[i] += push * (1.0 - share_j);
                layout.positions[j] -= push * share_j;
                moved = true;
            }
        }
        if (!moved)
            break;
        ++active_passes;
    }
    return active_passes;
}

std::vector<std::pair<TermId, TermId>> overlapping_pairs(const Layout &layout, double tolerance)
{
    std::vector<std::pair<TermId, TermId>> pairs;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        for (std::size_t j = i + 1; j < layout.size(); ++j) {
            if (penetration(layout.box(i), layout.box(j)) > tolerance)
                pairs.emplace_back(i, j);
        }
    }
    return pairs;
}

bool is_settled(const Layout &layout, double tolerance)
{
    return overlapping_pairs(layout, tolerance).empty();
}

Layout settle(const SimilarityGraph &graph, Layout layout, const ForceConfig &config)
{
    if (layout.size() != graph.vertex_count())
        throw Error(errc::invalid_argument, "layout and graph disagree on the number of words");
    if (config.iterations < 0 || config.attraction_gain < 0.0 || config.centering_gain < 0.0)
        throw Error(errc::invalid_argument, "force configuration out of range");

    const double cap = config.step_cap * layout.average_box_height();
    for (int t = 0; t < config.iterations; ++t) {
        const double alpha = decay_factor(config.decay, t, config.iterations);
        const auto repulsion = apply_repulsion(layout);
        const auto attraction =
            apply_attraction(graph, layout, config.attraction_gain, config.centering_gain);
        for (std::size_t i = 0; i < layout.size(); ++i)
            layout.positions[i] += capped((repulsion[i] + attraction[i]) * alpha, cap);
    }

    if (!is_settled(layout, config.overlap_tolerance))
        resolve_overlaps(layout, {}, config.resolution_passes);
    const auto leftover = overlapping_pairs(layout, config.overlap_tolerance);
    if (!leftover.empty())
        throw Error(errc::non_convergence,
            std::to_string(leftover.size()) + " word pairs still overlap after " +
                std::to_string(config.resolution_passes) + " resolution passes");
    return layout;
}

Layout initial_layout(const SimilarityGraph &graph, const ForceConfig &config)
{
    const double scale = default_canvas_scale(graph, config.canvas_scale);
    return settle(graph, mds_initialize(graph, scale, config.rng_seed), config);
}

}  // namespace semcloud
