#include "semcloud/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semcloud/error.hpp"

namespace semcloud {

const char *metric_name(Metric metric)
{
    switch (metric) {
    case Metric::realized_adjacencies:
        return "ra";
    case Metric::distortion:
        return "distortion";
    case Metric::compactness:
        return "compactness";
    }
    return "?";
}

Metric parse_metric(std::string_view name)
{
    for (Metric m : kAllMetrics) {
        if (name == metric_name(m))
            return m;
    }
    throw Error(errc::invalid_argument, "unknown metric '" + std::string(name) + "'");
}

double metric_value(const MetricReport &report, Metric metric)
{
    switch (metric) {
    case Metric::realized_adjacencies:
        return report.realized_adjacencies;
    case Metric::distortion:
        return report.distortion;
    case Metric::compactness:
        return report.compactness;
    }
    return 0.0;
}

bool is_adjacent(const Box &a, const Box &b)
{
    const bool a_small = a.area() <= b.area();
    const Box &small = a_small ? a : b;
    const Box &other = a_small ? b : a;
    // Growing the small box by 20% extends each side by 10% of its extent.
    const double reach_x = kAdjacencyInflation / 2 * small.size.w;
    const double reach_y = kAdjacencyInflation / 2 * small.size.h;
    return -x_overlap(small, other) <= reach_x && -y_overlap(small, other) <= reach_y;
}

std::pair<double, std::vector<std::size_t>> realized_adjacencies(const SimilarityGraph &graph,
    const Layout &layout)
{
    std::vector<std::size_t> realized;
    double total = 0.0;
    double hit = 0.0;
    const auto edges = graph.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge &e = edges[i];
        total += e.weight;
        if (is_adjacent(layout.box(e.u), layout.box(e.v))) {
            hit += e.weight;
            realized.push_back(i);
        }
    }
    if (edges.empty() || total <= 0.0)
        return {1.0, std::move(realized)};
    return {hit / total, std::move(realized)};
}

void PairedMoments::add(double x, double y)
{
    count += 1.0;
    const double dx = x - mean_x;
    mean_x += dx / count;
    const double dy = y - mean_y;
    mean_y += dy / count;
    m2_x += dx * (x - mean_x);
    m2_y += dy * (y - mean_y);
    co += dx * (y - mean_y);
}

void PairedMoments::merge(const PairedMoments &other)
{
    if (other.count == 0.0)
        return;
    if (count == 0.0) {
        *this = other;
        return;
    }
    const double n = count + other.count;
    const double dx = other.mean_x - mean_x;
    const double dy = other.mean_y - mean_y;
    const double f = count * other.count / n;
    m2_x += other.m2_x + dx * dx * f;
    m2_y += other.m2_y + dy * dy * f;
    co += other.co + dx * dy * f;
    mean_x += dx * other.count / n;
    mean_y += dy * other.count / n;
    count = n;
}

double PairedMoments::distortion() const
{
    if (count < 2.0 || m2_x <= 0.0 || m2_y <= 0.0)
        return 0.5;
    const double r = std::clamp(co / std::sqrt(m2_x * m2_y), -1.0, 1.0);
    return (r + 1.0) / 2.0;
}

double distortion(const SimilarityGraph &graph, const Layout &layout)
{
    const auto edges = graph.edges();
    const std::size_t m = edges.size();
    if (m < 2)
        return 0.5;

    // Two-pass moments for accuracy on the reference path.
    std::vector<double> xs(m);
    std::vector<double> ys(m);
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        xs[i] = 1.0 - edges[i].weight;
        ys[i] = gap_distance(layout.box(edges[i].u), layout.box(edges[i].v));
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / static_cast<double>(m);
    const double my = sy / static_cast<double>(m);
    double cov = 0.0;
    double vx = 0.0;
    double vy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double a = xs[i] - mx;
        const double b = ys[i] - my;
        cov += a * b;
        vx += a * a;
        vy += b * b;
    }
    if (vx <= 0.0 || vy <= 0.0)
        return 0.5;
    const double r = std::clamp(cov / std::sqrt(vx * vy), -1.0, 1.0);
    return (r + 1.0) / 2.0;
}

double compactness(const Layout &layout, bool *clamped)
{
    if (clamped)
        *clamped = false;
    if (layout.empty())
        throw Error(errc::invalid_argument, "compactness of an empty layout");
    double used = 0.0;
    for (const auto &s : layout.sizes)
        used += s.area();
    const double total = layout.bounds().area();
    if (total <= 0.0)
        return 1.0;
    const double c = used / total;
    if (c > 1.0) {
        if (clamped)
            *clamped = true;
        return 1.0;
    }
    return c;
}

MetricReport evaluate(const SimilarityGraph &graph, const Layout &layout)
{
    MetricReport report;
    auto [ra, realized] = realized_adjacencies(graph, layout);
    report.realized_adjacencies = ra;
    report.realized_edges = std::move(realized);
    report.distortion = distortion(graph, layout);
    report.compactness = compactness(layout, &report.compactness_clamped);
    return report;
}

}  // namespace semcloud
