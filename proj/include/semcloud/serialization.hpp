#pragma once

#include <string>

#include <json.hpp>

#include "semcloud/edit_session.hpp"
#include "semcloud/layout_engine.hpp"
#include "semcloud/metric_guides.hpp"
#include "semcloud/metrics.hpp"
#include "semcloud/similarity_graph.hpp"

namespace semcloud {

using json = nlohmann::json;

/// `display` rounds coordinates and sizes to 3 decimals and similarity or
/// metric values to 6; `exact` keeps full double precision (session export).
enum class Precision { display, exact };

double round_decimals(double value, int decimals);

json graph_to_json(const SimilarityGraph &graph, Precision precision = Precision::display);
SimilarityGraph graph_from_json(const json &doc);

json layout_to_json(const SimilarityGraph &graph, const Layout &layout,
    Precision precision = Precision::display);
/// Requires exactly one entry per graph vertex; errc::schema otherwise.
Layout layout_from_json(const json &doc, const SimilarityGraph &graph);

json metrics_to_json(const SimilarityGraph &graph, const MetricReport &report);

json adjacency_guide_to_json(const AdjacencyGuide &guide);
json heatmap_to_json(const DistortionHeatMap &map);
json compactness_guide_to_json(const CompactnessGuide &guide);

json force_config_to_json(const ForceConfig &config);
ForceConfig force_config_from_json(const json &doc, ForceConfig defaults = {});
json interaction_config_to_json(const InteractionConfig &config);
InteractionConfig interaction_config_from_json(const json &doc, InteractionConfig defaults = {});

/// {graph, current, history, saved, best, config} at full precision.
json export_session(const EditSession &session);
EditSession import_session(const json &bundle);

/// One <text> per word at its center; optional box outlines.
std::string layout_to_svg(const SimilarityGraph &graph, const Layout &layout,
    bool draw_boxes = false);

}  // namespace semcloud
