// semcloud: batch front-end for generating and scoring semantic word clouds.
//
//   semcloud generate corpus.txt --k 50 --seed 7 --out json --out svg
//   semcloud score corpus.layout.json corpus.graph.json
//   semcloud guide adjacency corpus.layout.json corpus.graph.json --focus 3
//
// Exit codes: 0 success, 1 data error, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semcloud/error.hpp"
#include "semcloud/metric_guides.hpp"
#include "semcloud/pipeline.hpp"
#include "semcloud/serialization.hpp"

namespace fs = std::filesystem;
using namespace semcloud;

namespace {

constexpr int kDataError = 1;
constexpr int kUsageError = 2;

std::string read_file(const fs::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(errc::invalid_argument, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path &path, const std::string &contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(errc::invalid_argument, "cannot write " + path.string());
    out << contents;
}

json read_json(const fs::path &path)
{
    auto doc = json::parse(read_file(path), nullptr, false);
    if (doc.is_discarded())
        throw Error(errc::schema, path.string() + " is not valid JSON");
    return doc;
}

struct GenerateArgs {
    fs::path input;
    std::size_t k = kDefaultTopK;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    double min_font = kDefaultMinFont;
    double max_font = kDefaultMaxFont;
    std::vector<std::string> outputs{"json"};
    std::string prefix;
    std::string stopwords;
    bool boxes = false;
};

struct ScoreArgs {
    fs::path layout;
    fs::path graph;
};

struct GuideArgs {
    std::string name;
    fs::path layout;
    fs::path graph;
    std::optional<std::size_t> focus;
    int grid = kDefaultHeatmapGrid;
};

void summarize(const MetricReport &m, std::size_t words, std::size_t edges)
{
    std::cerr << words << " words, " << edges << " edges: realized adjacencies "
              << m.realized_adjacencies << ", distortion " << m.distortion << ", compactness "
              << m.compactness << '\n';
}

int run_generate(const GenerateArgs &args, bool verbose)
{
    CloudConfig config;
    config.k = args.k;
    config.sigma = args.sigma;
    config.min_font = args.min_font;
    config.max_font = args.max_font;
    config.force.rng_seed = args.seed;

    const StopwordSet custom = args.stopwords.empty() ? StopwordSet{} : load_stopwords(args.stopwords);
    const StopwordSet &stopwords = args.stopwords.empty() ? default_stopwords() : custom;
    const Cloud cloud = build_cloud(read_file(args.input), config, stopwords);

    const fs::path prefix = args.prefix.empty() ? fs::path(args.input).replace_extension()
                                                : fs::path(args.prefix);
    // Score what is written, so that `score` on these files reproduces the line.
    const json graph_doc = graph_to_json(cloud.graph);
    const SimilarityGraph graph = graph_from_json(graph_doc);
    const json layout_doc = layout_to_json(graph, cloud.layout);
    const Layout layout = layout_from_json(layout_doc, graph);

    for (const auto &kind : args.outputs) {
        if (kind == "json") {
            write_file(prefix.string() + ".graph.json", graph_doc.dump(2) + "\n");
            write_file(prefix.string() + ".layout.json", layout_doc.dump(2) + "\n");
        } else {
            write_file(prefix.string() + ".svg", layout_to_svg(graph, layout, args.boxes));
        }
    }

    const MetricReport report = evaluate(graph, layout);
    std::cout << metrics_to_json(graph, report).dump() << '\n';
    if (verbose)
        summarize(report, graph.vertex_count(), graph.edges().size());
    return 0;
}

int run_score(const ScoreArgs &args, bool verbose)
{
    const SimilarityGraph graph = graph_from_json(read_json(args.graph));
    const Layout layout = layout_from_json(read_json(args.layout), graph);
    const MetricReport report = evaluate(graph, layout);
    std::cout << metrics_to_json(graph, report).dump() << '\n';
    if (verbose)
        summarize(report, graph.vertex_count(), graph.edges().size());
    return 0;
}

int run_guide(const GuideArgs &args)
{
    const SimilarityGraph graph = graph_from_json(read_json(args.graph));
    const Layout layout = layout_from_json(read_json(args.layout), graph);
    std::optional<TermId> focus;
    if (args.focus)
        focus = *args.focus;

    json out;
    if (args.name == "adjacency") {
        out = adjacency_guide_to_json(adjacency_guide(graph, layout, focus));
    } else if (args.name == "distortion") {
        if (!focus)
            throw Error(errc::invalid_argument, "the distortion heat map needs --focus");
        out = heatmap_to_json(distortion_heatmap(graph, layout, *focus, args.grid));
    } else if (args.name == "misplaced") {
        out = {{"misplaced", misplaced_words(graph, layout)}};
    } else {
        out = compactness_guide_to_json(compactness_guide(layout));
    }
    std::cout << out.dump() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Semantic word cloud layouts: generate, score and inspect."};
    app.require_subcommand(1);
    app.fallthrough();
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Human-readable summary on stderr");

    GenerateArgs gen;
    auto *generate = app.add_subcommand("generate", "Build a layout from a text file");
    generate->add_option("input", gen.input, "Input text file")->required()->check(CLI::ExistingFile);
    generate->add_option("--k", gen.k, "Number of words to keep")->check(CLI::PositiveNumber);
    generate->add_option("--sigma", gen.sigma, "Drop edges with similarity <= sigma")
        ->check(CLI::Range(0.0, 0.999999));
    generate->add_option("--seed", gen.seed, "Seed for the MDS start");
    generate->add_option("--min-font", gen.min_font, "Smallest font size")->check(CLI::PositiveNumber);
    generate->add_option("--max-font", gen.max_font, "Largest font size")->check(CLI::PositiveNumber);
    generate->add_option("--out", gen.outputs, "Outputs to write (json, svg)")
        ->check(CLI::IsMember({"json", "svg"}))
        ->delimiter(',');
    generate->add_option("--prefix", gen.prefix, "Output path prefix (default: input without extension)");
    generate->add_option("--stopwords", gen.stopwords, "Stopword list, one word per line")
        ->check(CLI::ExistingFile);
    generate->add_flag("--boxes", gen.boxes, "Draw bounding boxes in the SVG");

    ScoreArgs score;
    auto *score_cmd = app.add_subcommand("score", "Score a layout against its graph");
    score_cmd->add_option("layout", score.layout, "Layout JSON")->required();
    score_cmd->add_option("graph", score.graph, "Graph JSON")->required();

    GuideArgs guide;
    auto *guide_cmd = app.add_subcommand("guide", "Compute a metric guide payload");
    guide_cmd->add_option("name", guide.name, "adjacency, distortion, compactness or misplaced")
        ->required()
        ->check(CLI::IsMember({"adjacency", "distortion", "compactness", "misplaced"}));
    guide_cmd->add_option("layout", guide.layout, "Layout JSON")->required();
    guide_cmd->add_option("graph", guide.graph, "Graph JSON")->required();
    guide_cmd->add_option("--focus", guide.focus, "Focus term id");
    guide_cmd->add_option("--grid", guide.grid, "Heat map cells along the longer side")
        ->check(CLI::Range(2, 10000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (*generate)
            return run_generate(gen, verbose);
        if (*score_cmd)
            return run_score(score, verbose);
        return run_guide(guide);
    } catch (const Error &e) {
        std::cerr << "semcloud: " << to_string(e.code()) << ": " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception &e) {
        std::cerr << "semcloud: " << e.what() << '\n';
        return kDataError;
    }
}
