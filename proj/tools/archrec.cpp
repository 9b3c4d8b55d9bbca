// archrec: batch tool recovering tentative architecture layers from class
// dependency structure and design metrics.

#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "archrec/ingest.hpp"
#include "archrec/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitHalt = 3;
constexpr int kExitIo = 4;

using namespace archrec;

struct CommonFlags {
    std::string classFacts;
    std::string metrics;
    std::string edges;
    std::string dataset;
    std::string rulesPath;
    std::string truthPath;
    std::string out;
    std::string inputMode;
    std::string evalSpec = "resub";
    std::string decimal = "dot";
    std::string supervise = "tentative";
    std::string filter = "on";
    double alpha = 0.05;
    std::uint64_t seed = 1;
    int optPasses = 2;
    bool countInitializers = false;
    // synth knobs
    std::size_t classesPerLayer = 25;
    std::size_t spineDepth = 4;
    double downDepProb = 0.15;
    double skipDepProb = 0.0;
    double cycleProb = 0.0;
    bool factsMode = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--input-mode", f.inputMode,
                    "class-facts | metrics-edges | synth");
    cmd->add_option("--class-facts", f.classFacts, "class-facts document path");
    cmd->add_option("--metrics", f.metrics, "ckjm metric lines path");
    cmd->add_option("--edges", f.edges, "edge list path");
    cmd->add_option("--alpha", f.alpha, "correlation significance threshold");
    cmd->add_option("--seed", f.seed, "seed for every random draw");
    cmd->add_option("--eval", f.evalSpec, "resub | cv:K");
    cmd->add_option("--out", f.out, "output directory (or file for staged commands)");
    cmd->add_option("--decimal", f.decimal, "dot | comma");
    cmd->add_option("--supervise", f.supervise, "tentative | dlayer");
    cmd->add_option("--filter-by-significance", f.filter, "on | off");
    cmd->add_option("--opt-passes", f.optPasses, "rule optimization passes");
    cmd->add_flag("--count-initializers", f.countInitializers,
                  "count static initializers as methods");
}

PipelineConfig to_config(const CommonFlags& f) {
    PipelineConfig config;
    if (f.inputMode == "class-facts")
        config.inputMode = InputMode::ClassFactsFile;
    else if (f.inputMode == "metrics-edges")
        config.inputMode = InputMode::MetricsEdges;
    else if (f.inputMode == "synth" || f.inputMode.empty())
        config.inputMode = InputMode::Synth;
    else
        throw CLI::ValidationError("--input-mode", "unknown mode " + f.inputMode);
    config.classFactsPath = f.classFacts;
    config.metricsPath = f.metrics;
    config.edgesPath = f.edges;
    config.alpha = f.alpha;
    config.learner.seed = f.seed;
    config.learner.optPasses = f.optPasses;
    if (f.evalSpec == "resub") {
        config.evalMode.crossValidate = false;
    } else if (f.evalSpec.rfind("cv:", 0) == 0) {
        config.evalMode.crossValidate = true;
        config.evalMode.folds = std::stoi(f.evalSpec.substr(3));
    } else {
        throw CLI::ValidationError("--eval", "expected resub or cv:K");
    }
    config.outDir = f.out;
    config.decimal = f.decimal == "comma" ? DecimalStyle::Comma : DecimalStyle::Dot;
    config.supervise =
        f.supervise == "dlayer" ? SuperviseOn::DLayer : SuperviseOn::Tentative;
    config.filterBySignificance = f.filter != "off";
    config.metricsOptions.initializersCount = f.countInitializers;
    config.synth.seed = f.seed;
    config.synth.classesPerLayer = {f.classesPerLayer, f.classesPerLayer,
                                    f.classesPerLayer, f.classesPerLayer};
    config.synth.spineDepth = f.spineDepth;
    config.synth.downDepProb = f.downDepProb;
    config.synth.skipDepProb = f.skipDepProb;
    config.synth.cycleProb = f.cycleProb;
    return config;
}

// Auto-detect the input mode when paths make it obvious.
void infer_mode(CommonFlags& f) {
    if (!f.inputMode.empty()) return;
    if (!f.classFacts.empty())
        f.inputMode = "class-facts";
    else if (!f.metrics.empty() || !f.edges.empty())
        f.inputMode = "metrics-edges";
}

void emit(const std::string& out, const std::string& content) {
    if (out.empty())
        std::cout << content;
    else
        write_file(out, content);
}

struct StagedInput {
    MetricsTable metrics;
    DependencyGraph graph;
};

StagedInput load_staged(const CommonFlags& f, const PipelineConfig& config) {
    StagedInput in;
    if (config.inputMode == InputMode::ClassFactsFile) {
        ClassModel model = parse_class_facts(read_file(f.classFacts));
        in.metrics = compute_metrics(model, config.metricsOptions);
        in.graph = build_graph(model);
    } else if (config.inputMode == InputMode::MetricsEdges) {
        in.metrics = parse_ckjm_metrics(read_file(f.metrics));
        EdgeList edges = parse_edges(read_file(f.edges));
        std::set<ClassId> nodes;
        for (const auto& [id, v] : in.metrics.rows) nodes.insert(id);
        in.graph = graph_from_edges(nodes, edges.edges);
    } else {
        SynthSystem sys = generate(config.synth);
        in.metrics = sys.metrics;
        in.graph = sys.graph;
    }
    return in;
}

int dispatch(const std::string& command, CommonFlags& f) {
    infer_mode(f);
    PipelineConfig config = to_config(f);

    if (command == "run") {
        ReportBundle bundle = run_pipeline(config);
        if (config.outDir.empty()) {
            std::cout << bundle.rulesText << '\n' << bundle.accuracyMd;
        } else {
            std::cout << "report bundle written to " << config.outDir << '\n';
        }
        return kExitOk;
    }
    if (command == "ingest") {
        if (config.inputMode == InputMode::ClassFactsFile) {
            ClassModel model = parse_class_facts(read_file(f.classFacts));
            auto violations = validate_model(model);
            for (const auto& v : violations)
                std::cerr << "violation: " << v.className << ": " << v.detail << '\n';
            emit(f.out, format_class_facts(model));
            return violations.empty() ? kExitOk : kExitParse;
        }
        MetricsTable table = parse_ckjm_metrics(read_file(f.metrics));
        emit(f.out, format_ckjm_metrics(table));
        return kExitOk;
    }
    if (command == "layers") {
        StagedInput in = load_staged(f, config);
        LayerAssignment assign = assign_dlayers(condense(in.graph));
        std::map<ClassId, TentativeLayer> tentative;
        if (assign.maxLayer >= 3) tentative = bin_tentative(assign).second;
        emit(f.out, layers_to_csv(assign, tentative));
        return kExitOk;
    }
    if (command == "metrics") {
        ClassModel model = parse_class_facts(read_file(f.classFacts));
        emit(f.out, format_ckjm_metrics(compute_metrics(model, config.metricsOptions)));
        return kExitOk;
    }
    if (command == "stats") {
        StagedInput in = load_staged(f, config);
        LayerAssignment assign = assign_dlayers(condense(in.graph));
        CorrelationMatrix matrix = correlation_matrix(in.metrics, assign);
        emit(f.out, render_correlations_md(matrix, config.decimal));
        return kExitOk;
    }
    if (command == "discretize") {
        StagedInput in = load_staged(f, config);
        LayerAssignment assign = assign_dlayers(condense(in.graph));
        auto [bins, tentative] = bin_tentative(assign);
        CorrelationMatrix matrix = correlation_matrix(in.metrics, assign);
        std::vector<std::string> selected;
        if (config.filterBySignificance) {
            selected = select_correlated(matrix, config.alpha);
            if (selected.empty()) throw PipelineHalt("no significant metric");
        } else {
            for (auto name : kMetricNames) selected.emplace_back(name);
        }
        std::map<ClassId, int> supervision;
        for (const auto& [id, layer] : tentative)
            supervision[id] = config.supervise == SuperviseOn::Tentative
                                  ? layer_index(layer)
                                  : assign.dlayerOf.at(id);
        BinningScheme scheme = build_binning_scheme(in.metrics, selected, supervision);
        NominalDataset dataset = apply_bins(in.metrics, tentative, scheme);
        if (f.out.empty()) {
            std::cout << scheme_to_json(scheme) << dataset_to_csv(dataset);
        } else {
            namespace fs = std::filesystem;
            fs::create_directories(f.out);
            write_file((fs::path(f.out) / "bins.json").string(), scheme_to_json(scheme));
            write_file((fs::path(f.out) / "dataset.csv").string(),
                       dataset_to_csv(dataset));
        }
        return kExitOk;
    }
    if (command == "rules") {
        NominalDataset dataset = dataset_from_csv(read_file(f.dataset));
        RuleSet rs = learn_ripper(dataset, config.learner);
        emit(f.out, format_rules(rs));
        return kExitOk;
    }
    if (command == "eval") {
        NominalDataset dataset = dataset_from_csv(read_file(f.dataset));
        EvaluationReport report;
        if (config.evalMode.crossValidate) {
            report = cross_validate(dataset, config.evalMode.folds,
                                    config.learner.seed, config.learner);
        } else if (!f.rulesPath.empty()) {
            RuleSet rs = parse_rules(read_file(f.rulesPath));
            std::map<ClassId, TentativeLayer> predictions, truth;
            for (std::size_t r = 0; r < dataset.size(); ++r) {
                predictions[dataset.ids[r]] =
                    layer_from_index(predict(rs, dataset, r));
                truth[dataset.ids[r]] = layer_from_index(dataset.labels[r]);
            }
            report = precision_recall(confusion(predictions, truth));
        } else {
            report = resubstitute(dataset, config.learner);
        }
        emit(f.out, render_accuracy_md(report, config.decimal));
        return kExitOk;
    }
    if (command == "synth") {
        namespace fs = std::filesystem;
        if (f.out.empty())
            throw CLI::ValidationError("--out", "synth needs an output directory");
        fs::create_directories(f.out);
        if (f.factsMode) {
            SynthFactsSystem sys = generate_class_facts(config.synth);
            write_file((fs::path(f.out) / "facts.txt").string(),
                       format_class_facts(sys.model));
            write_file((fs::path(f.out) / "truth.csv").string(),
                       truth_to_csv(sys.truth));
        } else {
            SynthSystem sys = generate(config.synth);
            EdgeList edges;
            edges.edges = sys.graph.edges;
            write_file((fs::path(f.out) / "edges.txt").string(), format_edges(edges));
            write_file((fs::path(f.out) / "metrics.ckjm").string(),
                       format_ckjm_metrics(sys.metrics));
            write_file((fs::path(f.out) / "truth.csv").string(),
                       truth_to_csv(sys.truth));
        }
        std::cout << "synthetic system written to " << f.out << '\n';
        return kExitOk;
    }
    throw std::logic_error("unknown command " + command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tentative architecture layer recovery from design metrics"};
    app.require_subcommand(1);

    CommonFlags flags;
    const char* commands[] = {"run",        "ingest", "layers", "metrics", "stats",
                              "discretize", "rules",  "eval",   "synth"};
    std::map<const CLI::App*, std::string> names;
    for (const char* name : commands) {
        CLI::App* cmd = app.add_subcommand(name);
        add_common(cmd, flags);
        cmd->add_option("--dataset", flags.dataset, "NominalDataset CSV path");
        cmd->add_option("--rules", flags.rulesPath, "rule text path");
        cmd->add_option("--truth", flags.truthPath, "truth CSV path");
        cmd->add_option("--classes-per-layer", flags.classesPerLayer);
        cmd->add_option("--spine-depth", flags.spineDepth);
        cmd->add_option("--down-dep-prob", flags.downDepProb);
        cmd->add_option("--skip-dep-prob", flags.skipDepProb);
        cmd->add_option("--cycle-prob", flags.cycleProb);
        cmd->add_flag("--facts", flags.factsMode, "emit class-facts instead of metrics");
        names[cmd] = name;
    }

    CLI11_PARSE(app, argc, argv);

    try {
        return dispatch(names[app.get_subcommands().front()], flags);
    } catch (const archrec::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const archrec::PipelineHalt& e) {
        std::cerr << "pipeline halted: " << e.what() << '\n';
        return kExitHalt;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    }
}
