#include "semcloud/similarity_graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semcloud/error.hpp"

namespace semcloud {

SimilarityGraph::SimilarityGraph(std::vector<Term> terms, std::vector<Edge> edges, double sigma)
    : terms_(std::move(terms))
    , edges_(std::move(edges))
    , sigma_(sigma)
{
    const std::size_t n = terms_.size();
    for (auto &e : edges_) {
        if (e.u > e.v)
            std::swap(e.u, e.v);
        if (e.v >= n)
            throw Error(errc::schema, "edge references vertex " + std::to_string(e.v) +
                    " of a graph with " + std::to_string(n) + " vertices");
        if (e.u == e.v)
            throw Error(errc::schema, "self-loop on vertex " + std::to_string(e.u));
        if (!(e.weight >= 0.0 && e.weight <= 1.0))
            throw Error(errc::schema, "edge weight outside [0, 1]");
    }
    std::sort(edges_.begin(), edges_.end(),
        [](const Edge &a, const Edge &b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });

    edge_lookup_.assign(n * n, -1);
    adjacency_.assign(n, {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge &e = edges_[i];
        auto &slot = edge_lookup_[e.u * n + e.v];
        if (slot >= 0)
            throw Error(errc::schema, "duplicate edge between " + std::to_string(e.u) + " and " +
                    std::to_string(e.v));
        slot = static_cast<std::int32_t>(i);
        edge_lookup_[e.v * n + e.u] = static_cast<std::int32_t>(i);
        adjacency_[e.u].push_back({e.v, e.weight});
        adjacency_[e.v].push_back({e.u, e.weight});
    }
    for (auto &list : adjacency_) {
        std::sort(list.begin(), list.end(), [](const Neighbor &a, const Neighbor &b) {
            return a.weight != b.weight ? a.weight > b.weight : a.id < b.id;
        });
    }
}

double SimilarityGraph::weight(TermId a, TermId b) const
{
    const auto idx = edge_index(a, b);
    return idx ? edges_[*idx].weight : 0.0;
}

std::optional<std::size_t> SimilarityGraph::edge_index(TermId a, TermId b) const
{
    const std::size_t n = terms_.size();
    if (a >= n || b >= n)
        return std::nullopt;
    const auto slot = edge_lookup_[a * n + b];
    if (slot < 0)
        return std::nullopt;
    return static_cast<std::size_t>(slot);
}

void SimilarityGraph::set_box(TermId id, double width, double height)
{
    if (id >= terms_.size())
        throw Error(errc::unknown_term, "unknown term id " + std::to_string(id));
    if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height))
        throw Error(errc::invalid_argument, "box dimensions must be positive and finite");
    terms_[id].box_width = width;
    terms_[id].box_height = height;
}

double jaccard(std::span<const std::size_t> a, std::span<const std::size_t> b)
{
    std::size_t common = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++common;
            ++ia;
            ++ib;
        }
    }
    const std::size_t together = a.size() + b.size() - common;
    if (together == 0)
        return 0.0;
    return static_cast<double>(common) / static_cast<double>(together);
}

SimilarityGraph build_graph(const std::vector<Term> &terms, const SentenceIndex &index,
    double sigma)
{
    if (terms.empty())
        throw Error(errc::invalid_argument, "cannot build a graph without terms");
    if (!(sigma >= 0.0 && sigma < 1.0))
        throw Error(errc::invalid_argument, "sigma must lie in [0, 1)");

    std::vector<const std::vector<std::size_t> *> sets;
    sets.reserve(terms.size());
    for (const auto &t : terms)
        sets.push_back(&index.sentences_of(t.stem));

    std::vector<Edge> edges;
    for (TermId u = 0; u < terms.size(); ++u) {
        for (TermId v = u + 1; v < terms.size(); ++v) {
            const double w = jaccard(*sets[u], *sets[v]);
            if (w > sigma)
                edges.push_back({u, v, w});
        }
    }
    return SimilarityGraph(terms, std::move(edges), sigma);
}

}  // namespace semcloud
