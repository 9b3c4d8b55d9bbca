#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "archrec/discretize.hpp"
#include "archrec/eval.hpp"
#include "archrec/layering.hpp"
#include "archrec/metrics.hpp"
#include "archrec/model.hpp"
#include "archrec/report.hpp"
#include "archrec/rules.hpp"
#include "archrec/stats.hpp"
#include "archrec/synth.hpp"

namespace archrec {

/// Recoverable stop of the pipeline (no significant metrics, too few
/// D-layers, ...), as opposed to malformed input.
class PipelineHalt : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class InputMode { ClassFactsFile, MetricsEdges, Synth };
enum class SuperviseOn { Tentative, DLayer };

struct EvalMode {
    bool crossValidate = false;
    int folds = 10;
};

struct PipelineConfig {
    InputMode inputMode = InputMode::Synth;
    std::string classFactsPath;
    std::string metricsPath;
    std::string edgesPath;
    double alpha = 0.05;
    RipperParams learner;
    EvalMode evalMode;
    std::string outDir;  // empty: in-memory only
    DecimalStyle decimal = DecimalStyle::Dot;
    SuperviseOn supervise = SuperviseOn::Tentative;
    bool filterBySignificance = true;
    MetricsOptions metricsOptions;
    SynthParams synth;
};

struct ReportBundle {
    MetricsTable metrics;
    LayerAssignment dlayers;
    BinEdges dlayerBins{};
    std::map<ClassId, TentativeLayer> tentative;
    CorrelationMatrix correlations;
    std::vector<std::string> selectedMetrics;
    BinningScheme scheme;
    NominalDataset dataset;
    RuleSet rules;
    EvaluationReport evaluation;   // against the tentative labels
    std::optional<EvaluationReport> truthEvaluation;  // synth only

    std::string descriptiveMd;
    std::string correlationsMd;
    std::string correlationsCsv;
    std::string rulesText;
    std::string rulesJson;
    std::string accuracyMd;
    std::string accuracyCsv;
    std::string layersCsv;
    std::string datasetCsv;
    std::string schemeJson;
};

/// Runs ingest -> layering -> metrics -> stats -> discretize -> rules ->
/// eval and renders every artifact; writes the bundle under outDir when set.
/// Throws ParseError for malformed inputs, PipelineHalt for diagnostic
/// stops, std::ios_base::failure for I/O errors.
ReportBundle run_pipeline(const PipelineConfig& config);

/// Shared by run_pipeline and the staged CLI: everything from a metrics
/// table + dependency graph (+ optional planted truth) onward.
ReportBundle run_from_metrics(const MetricsTable& metrics,
                              const DependencyGraph& graph,
                              const std::map<ClassId, TentativeLayer>* truth,
                              const PipelineConfig& config);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace archrec
