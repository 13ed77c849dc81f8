#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semcloud/edit_session.hpp"
#include "semcloud/layout_engine.hpp"
#include "semcloud/similarity_graph.hpp"

namespace fixture {

using semcloud::Edge;
using semcloud::Layout;
using semcloud::SimilarityGraph;
using semcloud::Size;
using semcloud::Vec2;

std::string data_path(const std::string &relative);
std::string read_file(const std::string &path);

/// The three fixture corpora under data/corpus.
const std::vector<std::string> &corpus_names();
std::string corpus_text(const std::string &name);

/// Graph over anonymous words "w0", "w1", ... with the given boxes.
SimilarityGraph make_graph(const std::vector<Size> &boxes, std::vector<Edge> edges);
Layout make_layout(const SimilarityGraph &graph, const std::vector<Vec2> &positions);

/// Small deterministic PRNG so that fixtures do not depend on the standard
/// library's distributions.
class Random {
public:
    explicit Random(std::uint64_t seed) : state_(seed * 0x9E3779B97F4A7C15ull + 1) {}
    std::uint64_t next();
    double uniform(double lo, double hi);
    std::size_t below(std::size_t n);
    bool chance(double p) { return uniform(0, 1) < p; }

private:
    std::uint64_t state_;
};

struct Scene {
    SimilarityGraph graph;
    Layout layout;
};

/// Random graph and layout with 2..max_words words; boxes are packed loosely
/// so that contacts, near misses and overlaps all occur.
Scene random_scene(std::uint64_t seed, std::size_t max_words = 10);

/// Random weighted graph with exactly n vertices and equal boxes.
SimilarityGraph random_graph(std::uint64_t seed, std::size_t n, double edge_probability = 0.4);

/// Drag fixture modelled on a cloud where the dragged root has two strong
/// neighbors: one tied only to the root, one also held by three strong
/// neighbors of its own on the far side.
struct FollowScene {
    Scene scene;
    semcloud::TermId root = 0;
    semcloud::TermId free_follower = 1;
    semcloud::TermId held_follower = 2;
    Vec2 target;
};
FollowScene follow_scene();

/// Session on the bread corpus (k = 20) whose most central word has been
/// dragged far to the right, leaving a hole in the cloud.
semcloud::EditSession hole_session();

/// Six words with nine edges of mixed weight, spread so that no two touch.
Scene six_word_scene();

/// Weighted graph rooted at word 0 with the members select_relevant should
/// return at theta 0.1, in discovery order.
struct TreeCase {
    const char *name;
    std::size_t words;
    std::vector<Edge> edges;
    std::vector<semcloud::RelevantMember> expected;
};
const std::vector<TreeCase> &tree_cases();

}  // namespace fixture
