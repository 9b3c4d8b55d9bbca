#include <benchmark/benchmark.h>

#include <random>

#include "archrec/discretize.hpp"
#include "archrec/layering.hpp"
#include "archrec/rules.hpp"
#include "archrec/stats.hpp"
#include "archrec/synth.hpp"

using namespace archrec;

namespace {

SynthSystem make_system(std::size_t perLayer, double cycleProb) {
    SynthParams p;
    p.classesPerLayer = {perLayer, perLayer, perLayer, perLayer};
    p.downDepProb = 0.2;
    p.cycleProb = cycleProb;
    p.seed = 12;
    return generate(p);
}

void BM_CondenseAndLayer(benchmark::State& state) {
    SynthSystem sys = make_system(static_cast<std::size_t>(state.range(0)), 0.05);
    for (auto _ : state) {
        LayerAssignment assign = assign_dlayers(condense(sys.graph));
        benchmark::DoNotOptimize(assign.maxLayer);
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<long long>(sys.graph.nodes.size()));
}
BENCHMARK(BM_CondenseAndLayer)->Arg(50)->Arg(200)->Arg(500);

void BM_CorrelationMatrix(benchmark::State& state) {
    SynthSystem sys = make_system(static_cast<std::size_t>(state.range(0)), 0.0);
    LayerAssignment assign = assign_dlayers(condense(sys.graph));
    for (auto _ : state) {
        CorrelationMatrix m = correlation_matrix(sys.metrics, assign);
        benchmark::DoNotOptimize(m.n);
    }
}
BENCHMARK(BM_CorrelationMatrix)->Arg(50)->Arg(200);

void BM_MdlpDiscretize(benchmark::State& state) {
    std::mt19937_64 rng(9);
    std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<double> values(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = static_cast<double>(rng() % 100);
        labels[i] = 1 + static_cast<int>(rng() % 4);
    }
    for (auto _ : state) {
        auto cuts = mdlp_discretize(values, labels);
        benchmark::DoNotOptimize(cuts.size());
    }
}
BENCHMARK(BM_MdlpDiscretize)->Arg(100)->Arg(1000)->Arg(5000);

void BM_LearnRipper(benchmark::State& state) {
    std::mt19937_64 rng(4);
    std::size_t n = static_cast<std::size_t>(state.range(0));
    NominalDataset data;
    data.attributes = {"ABin", "BBin", "CBin"};
    data.domainSizes = {3, 4, 3};
    for (std::size_t i = 0; i < n; ++i) {
        char name[16];
        std::snprintf(name, sizeof name, "c%05zu", i);
        data.ids.push_back(ClassId{name});
        int a = 1 + static_cast<int>(rng() % 3);
        int b = 1 + static_cast<int>(rng() % 4);
        int c = 1 + static_cast<int>(rng() % 3);
        data.rows.push_back({a, b, c});
        int label = 4;
        if (a == 1 && b == 2) label = 1;
        else if (a == 3) label = 2;
        if (rng() % 20 == 0) label = 1 + static_cast<int>(rng() % 4);
        data.labels.push_back(label);
    }
    for (auto _ : state) {
        RuleSet rs = learn_ripper(data);
        benchmark::DoNotOptimize(rs.rules.size());
    }
}
BENCHMARK(BM_LearnRipper)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
