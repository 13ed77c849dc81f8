#include "semcloud/edit_session.hpp"

#include <cmath>
#include <queue>
#include <string>

#include "semcloud/error.hpp"

namespace semcloud {

RelevantVertexTree select_relevant(const SimilarityGraph &graph, TermId root, double theta)
{
    if (!graph.contains(root))
        throw Error(errc::unknown_term, "unknown term id " + std::to_string(root));

    RelevantVertexTree tree;
    tree.root = root;
    const std::size_t n = graph.vertex_count();
    std::vector<bool> visited(n, false);
    std::vector<bool> joined(n, false);
    std::vector<int> depth(n, 0);
    visited[root] = true;
    joined[root] = true;

    std::queue<TermId> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
        const TermId u = frontier.front();
        frontier.pop();
        for (const Neighbor &nb : graph.neighbors(u)) {
            if (visited[nb.id])
                continue;
            visited[nb.id] = true;
            depth[nb.id] = depth[u] + 1;
            const bool joins = joined[u] && nb.weight / depth[nb.id] >= theta;
            joined[nb.id] = joins;
            if (joins)
                tree.members.push_back({nb.id, u, depth[nb.id], nb.weight});
            frontier.push(nb.id);
        }
    }
    return tree;
}

EditSession::EditSession(SimilarityGraph graph, Layout initial, InteractionConfig config)
    : graph_(std::move(graph))
    , current_(std::move(initial))
    , config_(std::move(config))
{
    if (current_.size() != graph_.vertex_count())
        throw Error(errc::invalid_argument, "layout and graph disagree on the number of words");
    if (!(config_.theta >= 0.0 && config_.theta <= 1.0))
        throw Error(errc::invalid_argument, "theta must lie in [0, 1]");
    metrics_ = evaluate(graph_, current_);
    observe();
}

EditSession EditSession::restore(SimilarityGraph graph, Layout current, InteractionConfig config,
    std::deque<Layout> history, std::map<std::string, Layout> saved,
    std::map<Metric, BestSnapshot> best, std::optional<MetricReport> previous)
{
    EditSession s;
    s.previous_metrics_ = std::move(previous);
    s.graph_ = std::move(graph);
    s.current_ = std::move(current);
    s.config_ = std::move(config);
    s.history_ = std::move(history);
    s.saved_ = std::move(saved);
    s.best_ = std::move(best);
    const std::size_t n = s.graph_.vertex_count();
    auto check = [n](const Layout &l) {
        if (l.size() != n)
            throw Error(errc::schema, "snapshot and graph disagree on the number of words");
    };
    check(s.current_);
    for (const auto &l : s.history_)
        check(l);
    for (const auto &[name, l] : s.saved_)
        check(l);
    for (const auto &[m, b] : s.best_)
        check(b.layout);
    s.metrics_ = evaluate(s.graph_, s.current_);
    s.observe();
    return s;
}

void EditSession::require_word(TermId word) const
{
    if (!graph_.contains(word))
        throw Error(errc::unknown_term, "unknown term id " + std::to_string(word));
}

void EditSession::observe()
{
    for (Metric m : kAllMetrics) {
        const double value = metric_value(metrics_, m);
        auto it = best_.find(m);
        if (it == best_.end() || value > it->second.value)
            best_[m] = {value, current_};
    }
}

void EditSession::commit(Layout next)
{
    history_.push_back(std::move(current_));
    while (history_.size() > config_.history_limit)
        history_.pop_front();
    previous_metrics_ = std::move(metrics_);
    current_ = std::move(next);
    metrics_ = evaluate(graph_, current_);
    observe();
}

namespace {

Vec2 checked_target(Vec2 target)
{
    if (!std::isfinite(target.x) || !std::isfinite(target.y))
        throw Error(errc::invalid_argument, "move target must be finite");
    return target;
}

// Pins `word` and pushes everything it (transitively) overlaps out of the way.
// Contacts that only overlap by rounding noise are left alone.
Layout resolve_around(Layout next, TermId word, const InteractionConfig &config)
{
    const double tolerance = config.force.overlap_tolerance;
    if (is_settled(next, tolerance))
        return next;
    std::vector<bool> pinned(next.size(), false);
    pinned[word] = true;
    resolve_overlaps(next, pinned, config.move_resolution_passes);
    if (!is_settled(next, tolerance))
        throw Error(errc::non_convergence, "overlaps remain after the move");
    return next;
}

}  // namespace

const Layout &EditSession::move_word(TermId word, Vec2 target)
{
    require_word(word);
    Layout next = current_;
    next.positions[word] = checked_target(target);
    commit(resolve_around(std::move(next), word, config_));
    return current_;
}

const Layout &EditSession::move_with_neighbors(TermId word, Vec2 target)
{
    require_word(word);
    checked_target(target);
    const RelevantVertexTree tree = select_relevant(graph_, word, config_.theta);

    // Phase 1: only anchors (to the pre-move positions) and the tree springs act;
    // their equilibrium is found by Gauss-Seidel relaxation. Words outside the
    // tree feel nothing but their anchor and therefore stay put.
    Layout next = current_;
    next.positions[word] = target;
    const auto &anchors = current_.positions;

    struct Spring {
        TermId other;
        double stiffness;
    };
    std::map<TermId, std::vector<Spring>> springs;
    for (const RelevantMember &m : tree.members) {
        const double k =
            m.weight * config_.force.attraction_gain * config_.follow_strength_decay(m.depth);
        springs[m.id].push_back({m.parent, k});
        if (m.parent != word)
            springs[m.parent].push_back({m.id, k});
    }

    const double settle_eps = 1e-9 * std::max(1.0, current_.average_box_height());
    for (int sweep = 0; sweep < config_.follow_max_sweeps && !springs.empty(); ++sweep) {
        double largest = 0.0;
        for (const RelevantMember &m : tree.members) {
            Vec2 acc = anchors[m.id] * config_.anchor_gain;
            double stiffness = config_.anchor_gain;
            for (const Spring &s : springs[m.id]) {
                acc += next.positions[s.other] * s.stiffness;
                stiffness += s.stiffness;
            }
            if (stiffness <= 0.0)
                continue;
            const Vec2 updated = acc * (1.0 / stiffness);
            largest = std::max(largest, (updated - next.positions[m.id]).norm());
            next.positions[m.id] = updated;
        }
        if (largest < settle_eps)
            break;
    }

    // Phase 2: anchors now sit at the relaxed positions, so only the overlap
    // removal moves words; the dragged word stays pinned.
    commit(resolve_around(std::move(next), word, config_));
    return current_;
}

const Layout &EditSession::fill_holes()
{
    ForceConfig force = config_.force;
    force.iterations = config_.fill_iterations;
    commit(settle(graph_, current_, force));
    return current_;
}

const Layout &EditSession::undo()
{
    if (history_.empty())
        throw Error(errc::empty_history, "nothing to undo");
    previous_metrics_ = std::move(metrics_);
    current_ = std::move(history_.back());
    history_.pop_back();
    metrics_ = evaluate(graph_, current_);
    observe();
    return current_;
}

void EditSession::save_state(const std::string &name)
{
    if (name.empty())
        throw Error(errc::invalid_argument, "state name must not be empty");
    saved_[name] = current_;
}

const Layout &EditSession::load_state(const std::string &name)
{
    const auto it = saved_.find(name);
    if (it == saved_.end())
        throw Error(errc::unknown_state, "no saved state named '" + name + "'");
    commit(it->second);
    return current_;
}

const Layout &EditSession::load_best(Metric metric)
{
    const auto it = best_.find(metric);
    if (it == best_.end())
        throw Error(errc::unknown_state, std::string("no best snapshot for ") + metric_name(metric));
    commit(it->second.layout);
    return current_;
}

}  // namespace semcloud
