#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "semcloud/geometry.hpp"
#include "semcloud/similarity_graph.hpp"

namespace semcloud {

/// Word box centers on an unbounded canvas, indexed by TermId.
struct Layout {
    std::vector<Vec2> positions;
    std::vector<Size> sizes;

    /// All words at the origin, sized from the graph's term boxes.
    static Layout from_graph(const SimilarityGraph &graph);

    std::size_t size() const { return positions.size(); }
    bool empty() const { return positions.empty(); }
    Box box(TermId id) const { return {positions[id], sizes[id]}; }
    /// Tight axis-aligned bounds of all boxes.
    Rect bounds() const;
    double average_box_height() const;

    friend bool operator==(const Layout &, const Layout &) = default;
};

enum class Decay {
    linear,    // alpha_t = 1 - t / iterations
    constant,  // alpha_t = 1
};

struct ForceConfig {
    int iterations = 1000;
    double attraction_gain = 0.1;
    double centering_gain = 0.01;
    Decay decay = Decay::linear;
    double overlap_tolerance = 0.5;
    std::uint64_t rng_seed = 0;
    /// Undamped overlap-removal passes run after the force loop.
    int resolution_passes = 200;
    /// Per-step displacement cap, in units of the average box height.
    double step_cap = 0.5;
    /// MDS target distances are expressed in units of the average box height.
    double canvas_scale = 25.0;
};

double decay_factor(Decay decay, int step, int iterations);

/// Pairs closer than this are treated as touching by the overlap resolver.
inline constexpr double kContactEpsilon = 1e-9;
/// Fraction of a separating push taken by the outer word of a pair.
inline constexpr double kOuterShare = 0.75;

// --- MDS -------------------------------------------------------------------

/// Dense target distances and stress weights (1/d^2, with d floored at 1% of
/// the canvas scale so that identical words do not get an infinite weight).
struct Dissimilarities {
    std::size_t n = 0;
    std::vector<double> target;
    std::vector<double> weight;

    double distance(std::size_t i, std::size_t j) const { return target[i * n + j]; }
    double stress_weight(std::size_t i, std::size_t j) const { return weight[i * n + j]; }
};

/// Edge (u, v) targets (1 - s) * scale; pairs without an edge target scale.
Dissimilarities target_dissimilarities(const SimilarityGraph &graph, double canvas_scale);

double stress(std::span<const Vec2> positions, const Dissimilarities &targets);

struct MdsOptions {
    int max_sweeps = 300;
    double relative_tolerance = 1e-6;
};

struct MdsResult {
    std::vector<Vec2> positions;
    /// stress_history[0] is the random start, then one entry per sweep.
    std::vector<double> stress_history;
};

/// Localized stress majorization: each sweep replaces every point in turn by
/// the minimizer of its quadratic majorant, so stress never increases.
MdsResult stress_majorization(const Dissimilarities &targets, std::uint64_t seed,
    MdsOptions options = {});

double default_canvas_scale(const SimilarityGraph &graph, double factor = 25.0);

/// MDS placement, translated so the centroid sits at the origin.
Layout mds_initialize(const SimilarityGraph &graph, double canvas_scale, std::uint64_t seed);

// --- forces ----------------------------------------------------------------

/// Displacement that separates `a` from `b` along the axis of least overlap
/// (zero when they do not overlap). `b` receives the negation.
Vec2 separation(const Box &a, const Box &b, TermId a_id, TermId b_id);

std::vector<Vec2> apply_repulsion(const Layout &layout);

/// Edge attraction (p_v - p_u) * s * attraction_gain plus a pull of
/// (-p) * centering_gain towards the canvas origin.
std::vector<Vec2> apply_attraction(const SimilarityGraph &graph, const Layout &layout,
    double attraction_gain, double centering_gain);

/// Gauss-Seidel overlap removal along the same axis rule as the repulsion.
/// Each overlapping pair is separated fully; the word farther from the layout
/// centroid takes kOuterShare of the push, so crowded cores expand outwards in
/// a few passes instead of diffusing. Pinned words never move, and when there
/// are any the expansion is centered on them instead. Returns the number of
/// passes that moved something.
int resolve_overlaps(Layout &layout, const std::vector<bool> &pinned, int max_passes);

std::vector<std::pair<TermId, TermId>> overlapping_pairs(const Layout &layout, double tolerance);
bool is_settled(const Layout &layout, double tolerance);

/// Decaying force simulation followed by overlap removal. Removal only runs
/// when some pair overlaps beyond the tolerance, so an already settled layout
/// with no iterations comes back untouched. Throws errc::non_convergence if
/// overlaps beyond the tolerance survive.
Layout settle(const SimilarityGraph &graph, Layout layout, const ForceConfig &config);

/// MDS followed by settle.
Layout initial_layout(const SimilarityGraph &graph, const ForceConfig &config);

}  // namespace semcloud
