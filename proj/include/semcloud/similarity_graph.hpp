#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "semcloud/text_pipeline.hpp"

namespace semcloud {

/// Vertex ordinal into SimilarityGraph::terms().
using TermId = std::size_t;

struct Edge {
    TermId u = 0;  // u < v
    TermId v = 0;
    double weight = 0.0;

    friend bool operator==(const Edge &, const Edge &) = default;
};

struct Neighbor {
    TermId id = 0;
    double weight = 0.0;
};

/// Weighted co-occurrence graph. Edges are kept sorted by (u, v); neighbor
/// lists are sorted by descending weight, ties by ascending ordinal.
class SimilarityGraph {
public:
    SimilarityGraph() = default;
    SimilarityGraph(std::vector<Term> terms, std::vector<Edge> edges, double sigma = 0.0);

    std::size_t vertex_count() const { return terms_.size(); }
    const std::vector<Term> &terms() const { return terms_; }
    const Term &term(TermId id) const { return terms_.at(id); }
    std::span<const Edge> edges() const { return edges_; }
    double sigma() const { return sigma_; }

    bool contains(TermId id) const { return id < terms_.size(); }
    /// Similarity of the pair, 0 when no edge joins them.
    double weight(TermId a, TermId b) const;
    std::optional<std::size_t> edge_index(TermId a, TermId b) const;
    std::span<const Neighbor> neighbors(TermId id) const { return adjacency_.at(id); }

    /// Overrides a vertex's box (client-measured glyph extents).
    void set_box(TermId id, double width, double height);

    friend bool operator==(const SimilarityGraph &a, const SimilarityGraph &b)
    {
        return a.terms_ == b.terms_ && a.edges_ == b.edges_ && a.sigma_ == b.sigma_;
    }

private:
    std::vector<Term> terms_;
    std::vector<Edge> edges_;
    double sigma_ = 0.0;
    std::vector<std::int32_t> edge_lookup_;  // n*n, -1 for no edge
    std::vector<std::vector<Neighbor>> adjacency_;
};

/// |a ∩ b| / |a ∪ b| over sorted ordinal sets; 0 when both are empty.
double jaccard(std::span<const std::size_t> a, std::span<const std::size_t> b);

/// Complete Jaccard graph over `terms`, keeping only pairs with weight > sigma.
SimilarityGraph build_graph(const std::vector<Term> &terms, const SentenceIndex &index,
    double sigma = 0.0);

}  // namespace semcloud
