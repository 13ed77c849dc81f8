#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semcloud/layout_engine.hpp"
#include "semcloud/metrics.hpp"
#include "semcloud/similarity_graph.hpp"

namespace semcloud {

struct InteractionConfig {
    double theta = 0.1;
    /// Strength multiplier for a tree edge whose child sits at `depth`.
    std::function<double(int depth)> follow_strength_decay = [](int depth) {
        return 1.0 / static_cast<double>(depth);
    };
    double anchor_gain = 0.05;
    int fill_iterations = 300;
    std::uint64_t rng_seed = 0;
    std::size_t history_limit = 100;
    /// Relaxation sweeps allowed when the follow springs are brought to rest.
    int follow_max_sweeps = 10000;
    /// Overlap-removal passes allowed after a drag. A word dropped at the rim
    /// of a crowded cloud can need a few thousand.
    int move_resolution_passes = 10000;
    ForceConfig force;
};

struct RelevantMember {
    TermId id = 0;
    TermId parent = 0;
    int depth = 0;
    double weight = 0.0;  // similarity to parent

    friend bool operator==(const RelevantMember &, const RelevantMember &) = default;
};

struct RelevantVertexTree {
    TermId root = 0;
    std::vector<RelevantMember> members;  // BFS discovery order
};

/// BFS from `root`, visiting neighbors heaviest first (ties by ordinal). A
/// depth-1 vertex joins when s(root, v) >= theta; a deeper vertex joins when
/// its BFS parent joined and s(parent, v) / depth >= theta.
RelevantVertexTree select_relevant(const SimilarityGraph &graph, TermId root, double theta);

struct BestSnapshot {
    double value = 0.0;
    Layout layout;
};

/// Single-writer editing state machine over one word cloud. Every mutating
/// call leaves `current()` overlap-free, pushes the previous layout onto the
/// bounded undo history and refreshes the per-metric best snapshots.
class EditSession {
public:
    EditSession(SimilarityGraph graph, Layout initial, InteractionConfig config = {});

    const SimilarityGraph &graph() const { return graph_; }
    const Layout &current() const { return current_; }
    const MetricReport &metrics() const { return metrics_; }
    /// Metrics of the layout before the last operation, if any.
    const std::optional<MetricReport> &previous_metrics() const { return previous_metrics_; }
    const InteractionConfig &config() const { return config_; }
    const std::deque<Layout> &history() const { return history_; }
    const std::map<std::string, Layout> &saved() const { return saved_; }
    const std::map<Metric, BestSnapshot> &best() const { return best_; }

    const Layout &move_word(TermId word, Vec2 target);
    const Layout &move_with_neighbors(TermId word, Vec2 target);
    const Layout &fill_holes();
    const Layout &undo();
    void save_state(const std::string &name);
    const Layout &load_state(const std::string &name);
    const Layout &load_best(Metric metric);

    /// Rebuilds a session from exported parts without touching the snapshots.
    static EditSession restore(SimilarityGraph graph, Layout current, InteractionConfig config,
        std::deque<Layout> history, std::map<std::string, Layout> saved,
        std::map<Metric, BestSnapshot> best, std::optional<MetricReport> previous = std::nullopt);

private:
    EditSession() = default;

    void require_word(TermId word) const;
    void commit(Layout next);
    void observe();

    SimilarityGraph graph_;
    Layout current_;
    MetricReport metrics_;
    std::optional<MetricReport> previous_metrics_;
    InteractionConfig config_;
    std::deque<Layout> history_;
    std::map<std::string, Layout> saved_;
    std::map<Metric, BestSnapshot> best_;
};

}  // namespace semcloud
