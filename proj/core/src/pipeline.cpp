#include "archrec/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "archrec/ingest.hpp"

namespace archrec {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::ios_base::failure("write failed for " + path);
}

ReportBundle run_from_metrics(const MetricsTable& metrics,
                              const DependencyGraph& graph,
                              const std::map<ClassId, TentativeLayer>* truth,
                              const PipelineConfig& config) {
    ReportBundle bundle;
    bundle.metrics = metrics;

    Condensation cond = condense(graph);
    bundle.dlayers = assign_dlayers(cond);
    try {
        auto [bins, tentative] = bin_tentative(bundle.dlayers);
        bundle.dlayerBins = bins;
        bundle.tentative = std::move(tentative);
    } catch (const std::invalid_argument& e) {
        throw PipelineHalt(e.what());  // too few D-layers for four groups
    }

    bundle.correlations = correlation_matrix(metrics, bundle.dlayers);
    if (config.filterBySignificance) {
        bundle.selectedMetrics = select_correlated(bundle.correlations, config.alpha);
        if (bundle.selectedMetrics.empty())
            throw PipelineHalt("no metric is significantly correlated with the D-layer");
    } else {
        for (auto name : kMetricNames) bundle.selectedMetrics.emplace_back(name);
    }

    std::map<ClassId, int> supervision;
    for (const auto& [id, layer] : bundle.tentative)
        supervision[id] = config.supervise == SuperviseOn::Tentative
                              ? layer_index(layer)
                              : bundle.dlayers.dlayerOf.at(id);
    bundle.scheme =
        build_binning_scheme(metrics, bundle.selectedMetrics, supervision);
    bundle.dataset = apply_bins(metrics, bundle.tentative, bundle.scheme);
    if (bundle.dataset.attributes.empty())
        throw PipelineHalt("every selected metric is degenerate under MDLP");

    bundle.rules = learn_ripper(bundle.dataset, config.learner);

    if (config.evalMode.crossValidate) {
        bundle.evaluation = cross_validate(bundle.dataset, config.evalMode.folds,
                                           config.learner.seed, config.learner);
    } else {
        std::map<ClassId, TentativeLayer> predictions;
        for (std::size_t r = 0; r < bundle.dataset.size(); ++r)
            predictions[bundle.dataset.ids[r]] =
                layer_from_index(predict(bundle.rules, bundle.dataset, r));
        bundle.evaluation =
            precision_recall(confusion(predictions, bundle.tentative));
        if (truth) {
            bundle.truthEvaluation = precision_recall(
                confusion(predictions, *truth), "resubstitution-vs-truth");
        }
    }

    bundle.descriptiveMd = render_descriptive_md(
        metrics, bundle.dlayers, bundle.dlayerBins, bundle.scheme, config.decimal);
    bundle.correlationsMd = render_correlations_md(bundle.correlations, config.decimal);
    bundle.correlationsCsv = render_correlations_csv(bundle.correlations);
    bundle.rulesText = format_rules(bundle.rules);
    bundle.rulesJson = rules_to_json(bundle.rules);
    bundle.accuracyMd = render_accuracy_md(bundle.evaluation, config.decimal);
    bundle.accuracyCsv = render_accuracy_csv(bundle.evaluation);
    bundle.layersCsv = layers_to_csv(bundle.dlayers, bundle.tentative);
    bundle.datasetCsv = dataset_to_csv(bundle.dataset);
    bundle.schemeJson = scheme_to_json(bundle.scheme);

    if (!config.outDir.empty()) {
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(config.outDir, ec);
        if (ec) throw std::ios_base::failure("cannot create " + config.outDir);
        auto path = [&](const char* name) {
            return (fs::path(config.outDir) / name).string();
        };
        write_file(path("descriptive_stats.md"), bundle.descriptiveMd);
        write_file(path("correlations.md"), bundle.correlationsMd);
        write_file(path("correlations.csv"), bundle.correlationsCsv);
        write_file(path("rules.txt"), bundle.rulesText);
        write_file(path("rules.json"), bundle.rulesJson);
        write_file(path("accuracy.md"), bundle.accuracyMd);
        write_file(path("accuracy.csv"), bundle.accuracyCsv);
        write_file(path("layers.csv"), bundle.layersCsv);
        write_file(path("dataset.csv"), bundle.datasetCsv);
        write_file(path("bins.json"), bundle.schemeJson);
        if (bundle.truthEvaluation)
            write_file(path("accuracy_vs_truth.md"),
                       render_accuracy_md(*bundle.truthEvaluation, config.decimal));
    }
    return bundle;
}

ReportBundle run_pipeline(const PipelineConfig& config) {
    switch (config.inputMode) {
        case InputMode::ClassFactsFile: {
            ClassModel model = parse_class_facts(read_file(config.classFactsPath));
            auto violations = validate_model(model);
            if (!violations.empty()) {
                std::ostringstream msg;
                msg << "class-facts model invalid:";
                for (const auto& v : violations) msg << ' ' << v.detail << ';';
                throw ParseError(0, msg.str());
            }
            DependencyGraph graph = build_graph(model);
            MetricsTable metrics = compute_metrics(model, config.metricsOptions);
            return run_from_metrics(metrics, graph, nullptr, config);
        }
        case InputMode::MetricsEdges: {
            MetricsTable metrics = parse_ckjm_metrics(read_file(config.metricsPath));
            EdgeList edges = parse_edges(read_file(config.edgesPath));
            std::set<ClassId> nodes;
            for (const auto& [id, v] : metrics.rows) nodes.insert(id);
            DependencyGraph graph = graph_from_edges(nodes, edges.edges);
            return run_from_metrics(metrics, graph, nullptr, config);
        }
        case InputMode::Synth: {
            SynthSystem sys = generate(config.synth);
            return run_from_metrics(sys.metrics, sys.graph, &sys.truth, config);
        }
    }
    throw std::logic_error("unreachable input mode");
}

}  // namespace archrec
