#pragma once

#include <cstddef>
#include <string_view>

#include "semcloud/layout_engine.hpp"
#include "semcloud/metrics.hpp"
#include "semcloud/similarity_graph.hpp"
#include "semcloud/text_pipeline.hpp"

namespace semcloud {

struct CloudConfig {
    std::size_t k = kDefaultTopK;
    double sigma = 0.0;
    double min_font = kDefaultMinFont;
    double max_font = kDefaultMaxFont;
    ForceConfig force;
};

struct Cloud {
    SimilarityGraph graph;
    Layout layout;
    MetricReport metrics;
};

/// Text -> top-k terms -> sized boxes -> Jaccard graph.
SimilarityGraph build_similarity_graph(std::string_view text, const CloudConfig &config,
    const StopwordSet &stopwords = default_stopwords());

/// The whole pipeline: graph, MDS + force layout, metrics.
Cloud build_cloud(std::string_view text, const CloudConfig &config,
    const StopwordSet &stopwords = default_stopwords());

}  // namespace semcloud
