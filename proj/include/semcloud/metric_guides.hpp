#pragma once

#include <optional>
#include <vector>

#include "semcloud/geometry.hpp"
#include "semcloud/layout_engine.hpp"
#include "semcloud/metrics.hpp"
#include "semcloud/similarity_graph.hpp"

namespace semcloud {

inline constexpr std::size_t kTopMissedEdges = 10;
inline constexpr std::size_t kMisplacedWords = 5;
/// Pairs below this similarity count as unrelated when ranking misplaced words.
inline constexpr double kUnrelatedThreshold = 0.05;
inline constexpr double kBoundaryTolerance = 0.5;
inline constexpr int kDefaultHeatmapGrid = 40;

struct GuideEdge {
    TermId u = 0;
    TermId v = 0;
    double weight = 0.0;
    bool realized = false;

    friend bool operator==(const GuideEdge &, const GuideEdge &) = default;
};

/// Realized edges plus either the heaviest missed edges or, with a focus word,
/// every edge incident to it.
struct AdjacencyGuide {
    std::vector<GuideEdge> realized;
    std::vector<GuideEdge> top_missed;  // empty when focus is set
    std::optional<TermId> focus;
    std::vector<GuideEdge> focus_edges;
};

AdjacencyGuide adjacency_guide(const SimilarityGraph &graph, const Layout &layout,
    std::optional<TermId> focus = std::nullopt);

struct DistortionHeatMap {
    Vec2 origin;  // min corner of cell (0, 0)
    double cell_size = 0.0;
    std::size_t columns = 0;
    std::size_t rows = 0;
    /// Row-major, rows grow in +y.
    std::vector<double> cells;
    TermId focus = 0;
    /// Cell whose center is the focus word's current position.
    std::size_t focus_column = 0;
    std::size_t focus_row = 0;
    double min_value = 0.0;
    double max_value = 0.0;
    std::vector<TermId> misplaced;

    double at(std::size_t column, std::size_t row) const { return cells[row * columns + column]; }
    Vec2 cell_center(std::size_t column, std::size_t row) const
    {
        return {origin.x + (static_cast<double>(column) + 0.5) * cell_size,
            origin.y + (static_cast<double>(row) + 0.5) * cell_size};
    }
};

/// Tiles the layout bounds with square cells (`grid` across the longer side)
/// aligned so that the focus word's current center is a cell center, and stores
/// the distortion the layout would have with the focus word moved to each
/// cell center. Only incident edges are recomputed per cell.
DistortionHeatMap distortion_heatmap(const SimilarityGraph &graph, const Layout &layout,
    TermId focus, int grid = kDefaultHeatmapGrid);

/// Per-word penalty sums against every other word, using ideal center distance
/// (1 - s) * D / 2 where D is the largest center distance in the layout.
std::vector<double> misplacement_penalties(const SimilarityGraph &graph, const Layout &layout);

/// The five words with the largest penalty sums (ties by ordinal).
std::vector<TermId> misplaced_words(const SimilarityGraph &graph, const Layout &layout);

struct CompactnessGuide {
    Rect bbox;
    std::vector<TermId> boundary_words;  // ascending
};

CompactnessGuide compactness_guide(const Layout &layout);

}  // namespace semcloud
