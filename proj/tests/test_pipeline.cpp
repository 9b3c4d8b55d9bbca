#include <doctest.h>

#include <filesystem>

#include "archrec/pipeline.hpp"

using namespace archrec;

namespace {

PipelineConfig synth_config(std::uint64_t seed) {
    PipelineConfig cfg;
    cfg.inputMode = InputMode::Synth;
    cfg.synth.classesPerLayer = {30, 30, 30, 30};
    cfg.synth.downDepProb = 0.2;
    cfg.synth.cycleProb = 0.05;
    cfg.synth.seed = seed;
    cfg.learner.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("synthetic pipeline produces a full, consistent bundle") {
    ReportBundle bundle = run_pipeline(synth_config(11));
    // 4 x 30 regular classes plus the 4 x spineDepth(4) backbone chains
    CHECK(bundle.metrics.rows.size() == 136);
    CHECK(bundle.tentative.size() == 136);
    CHECK_FALSE(bundle.selectedMetrics.empty());
    CHECK_FALSE(bundle.dataset.attributes.empty());
    CHECK(bundle.evaluation.matrix.n == 136);
    REQUIRE(bundle.truthEvaluation.has_value());
    CHECK(bundle.truthEvaluation->accuracy > 0.9);

    for (const std::string* text :
         {&bundle.descriptiveMd, &bundle.correlationsMd, &bundle.rulesText,
          &bundle.accuracyMd, &bundle.layersCsv, &bundle.datasetCsv,
          &bundle.schemeJson, &bundle.rulesJson})
        CHECK_FALSE(text->empty());
}

TEST_CASE("pipeline runs are byte-identical for a fixed seed") {
    ReportBundle a = run_pipeline(synth_config(29));
    ReportBundle b = run_pipeline(synth_config(29));
    CHECK(a.descriptiveMd == b.descriptiveMd);
    CHECK(a.correlationsMd == b.correlationsMd);
    CHECK(a.rulesText == b.rulesText);
    CHECK(a.accuracyMd == b.accuracyMd);
    CHECK(a.layersCsv == b.layersCsv);
    CHECK(a.datasetCsv == b.datasetCsv);
    CHECK(a.schemeJson == b.schemeJson);
}

TEST_CASE("staged composition equals the one-shot run") {
    PipelineConfig cfg = synth_config(17);
    SynthSystem sys = generate(cfg.synth);
    ReportBundle staged = run_from_metrics(sys.metrics, sys.graph, &sys.truth, cfg);
    ReportBundle oneShot = run_pipeline(cfg);
    CHECK(staged.rulesText == oneShot.rulesText);
    CHECK(staged.datasetCsv == oneShot.datasetCsv);
    CHECK(staged.accuracyMd == oneShot.accuracyMd);
}

TEST_CASE("bundle files are written when outDir is set") {
    PipelineConfig cfg = synth_config(3);
    cfg.outDir = (std::filesystem::temp_directory_path() / "archrec_test_bundle").string();
    std::filesystem::remove_all(cfg.outDir);
    run_pipeline(cfg);
    for (const char* name :
         {"descriptive_stats.md", "correlations.md", "correlations.csv", "rules.txt",
          "rules.json", "accuracy.md", "accuracy.csv", "layers.csv", "dataset.csv",
          "bins.json", "accuracy_vs_truth.md"})
        CHECK(std::filesystem::exists(std::filesystem::path(cfg.outDir) / name));
    std::filesystem::remove_all(cfg.outDir);
}

TEST_CASE("shallow dependency graphs halt the pipeline") {
    MetricsTable table;
    DependencyGraph graph;
    for (int i = 0; i < 4; ++i) {
        ClassId id{"c" + std::to_string(i)};
        table.rows[id] = MetricVector{};
        graph.add_node(id);
    }
    graph.add_edge(ClassId{"c0"}, ClassId{"c1"});  // maxLayer 1 < 3
    PipelineConfig cfg;
    CHECK_THROWS_AS(run_from_metrics(table, graph, nullptr, cfg), PipelineHalt);
}

TEST_CASE("significance filter halts when nothing correlates, passes when off") {
    // metrics independent of the D-layer: constant everywhere
    MetricsTable table;
    DependencyGraph graph;
    ClassId prev{"c0"};
    graph.add_node(prev);
    table.rows[prev] = MetricVector{};
    for (int i = 1; i < 8; ++i) {
        ClassId id{"c" + std::to_string(i)};
        table.rows[id] = MetricVector{};
        graph.add_edge(id, prev);
        prev = id;
    }
    PipelineConfig cfg;
    CHECK_THROWS_AS(run_from_metrics(table, graph, nullptr, cfg), PipelineHalt);

    // constant metrics stay degenerate with the filter off, so the
    // discretization stage halts instead
    cfg.filterBySignificance = false;
    CHECK_THROWS_AS(run_from_metrics(table, graph, nullptr, cfg), PipelineHalt);
}

TEST_CASE("cross-validation mode flows through to the report") {
    PipelineConfig cfg = synth_config(41);
    cfg.evalMode.crossValidate = true;
    cfg.evalMode.folds = 5;
    ReportBundle bundle = run_pipeline(cfg);
    CHECK(bundle.evaluation.mode == "cv:5");
}

TEST_CASE("class-facts input mode drives the whole pipeline") {
    // four-layer chain of 8 classes with metric spread via method counts
    std::string doc;
    for (int i = 0; i < 8; ++i) {
        doc += "class L" + std::to_string(i) + "\n";
        for (int m = 0; m <= i; ++m)
            doc += "  method m" + std::to_string(m) + "() void public\n";
        if (i > 0)
            doc += "  method link() void public\n    invokes L" +
                   std::to_string(i - 1) + " m0()\n";
    }
    auto path = std::filesystem::temp_directory_path() / "archrec_facts.txt";
    write_file(path.string(), doc);

    PipelineConfig cfg;
    cfg.inputMode = InputMode::ClassFactsFile;
    cfg.classFactsPath = path.string();
    cfg.filterBySignificance = true;
    ReportBundle bundle = run_pipeline(cfg);
    CHECK(bundle.metrics.rows.size() == 8);
    CHECK(bundle.dlayers.maxLayer == 7);
    std::filesystem::remove(path);
}
