#include "semcloud/pipeline.hpp"

#include "semcloud/error.hpp"

namespace semcloud {

std::string_view to_string(errc code) noexcept
{
    switch (code) {
    case errc::empty_input:
        return "EmptyInput";
    case errc::unknown_term:
        return "UnknownTerm";
    case errc::unknown_state:
        return "UnknownState";
    case errc::empty_history:
        return "EmptyHistory";
    case errc::non_convergence:
        return "NonConvergence";
    case errc::schema:
        return "SchemaError";
    case errc::invalid_argument:
        return "InvalidArgument";
    }
    return "Unknown";
}

SimilarityGraph build_similarity_graph(std::string_view text, const CloudConfig &config,
    const StopwordSet &stopwords)
{
    const SentenceIndex index = segment_sentences(text);
    auto terms = assign_fonts(extract_terms(index, config.k, stopwords), config.min_font,
        config.max_font);
    return build_graph(terms, index, config.sigma);
}

Cloud build_cloud(std::string_view text, const CloudConfig &config, const StopwordSet &stopwords)
{
    Cloud cloud;
    cloud.graph = build_similarity_graph(text, config, stopwords);
    cloud.layout = initial_layout(cloud.graph, config.force);
    cloud.metrics = evaluate(cloud.graph, cloud.layout);
    return cloud;
}

}  // namespace semcloud
