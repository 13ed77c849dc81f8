#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "semcloud/geometry.hpp"
#include "semcloud/layout_engine.hpp"
#include "semcloud/similarity_graph.hpp"

namespace semcloud {

/// Relative growth of the smaller box when testing for contact.
inline constexpr double kAdjacencyInflation = 0.2;

struct MetricReport {
    double realized_adjacencies = 1.0;
    double distortion = 0.5;
    double compactness = 1.0;
    /// Edge indices into graph.edges() whose endpoints are in contact.
    std::vector<std::size_t> realized_edges;
    /// Set when word areas exceeded the bounding box (overlapping input).
    bool compactness_clamped = false;

    friend bool operator==(const MetricReport &, const MetricReport &) = default;
};

enum class Metric { realized_adjacencies, distortion, compactness };

inline constexpr Metric kAllMetrics[] = {
    Metric::realized_adjacencies, Metric::distortion, Metric::compactness};

const char *metric_name(Metric metric);
/// "ra", "distortion" or "compactness"; throws errc::invalid_argument otherwise.
Metric parse_metric(std::string_view name);
double metric_value(const MetricReport &report, Metric metric);

/// Inflates the smaller box (first argument on ties) by 20% about its center
/// and tests for closed overlap with the other box.
bool is_adjacent(const Box &a, const Box &b);

std::pair<double, std::vector<std::size_t>> realized_adjacencies(const SimilarityGraph &graph,
    const Layout &layout);

/// Streaming moments of paired samples (dissimilarity, distance), combinable so
/// that partial sums can be cached and extended.
struct PairedMoments {
    double count = 0.0;
    double mean_x = 0.0;
    double mean_y = 0.0;
    double m2_x = 0.0;
    double m2_y = 0.0;
    double co = 0.0;

    void add(double x, double y);
    void merge(const PairedMoments &other);
    /// (pearson + 1) / 2, or 0.5 when either side has no variance.
    double distortion() const;
};

/// Pearson correlation between edge dissimilarities 1 - s and box gap
/// distances, mapped to [0, 1]; 0.5 when undefined.
double distortion(const SimilarityGraph &graph, const Layout &layout);

/// Word area over bounding-box area, clamped to 1.
double compactness(const Layout &layout, bool *clamped = nullptr);

MetricReport evaluate(const SimilarityGraph &graph, const Layout &layout);

}  // namespace semcloud
