#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "archrec/layering.hpp"
#include "archrec/model.hpp"

namespace archrec {

/// Inclusive integer sampling range.
struct IntRange {
    long long lo = 0;
    long long hi = 0;
};

/// Per-metric ranges in canonical metric order (WMC..NPM).
using LayerProfile = std::array<IntRange, 8>;

struct SynthParams {
    std::array<std::size_t, 4> classesPerLayer{25, 25, 25, 25};
    double downDepProb = 0.15;
    double skipDepProb = 0.0;
    double cycleProb = 0.0;
    /// Spine chain length per layer; maxLayer = 4*spineDepth - 1, so the
    /// four-way binning recovers planted layers exactly. Must be >= 2 when
    /// cycleProb > 0.
    std::size_t spineDepth = 4;
    std::array<LayerProfile, 4> metricProfiles = default_profiles();
    std::uint64_t seed = 1;

    static std::array<LayerProfile, 4> default_profiles();
};

struct SynthSystem {
    DependencyGraph graph;
    MetricsTable metrics;
    std::map<ClassId, TentativeLayer> truth;
};

/// Deterministic for a fixed seed. With cycleProb = 0 the graph is acyclic
/// and bin_tentative over the derived D-layers recovers the planted layer of
/// every class. Throws std::invalid_argument on infeasible parameters.
SynthSystem generate(const SynthParams& params);

/// Alternative entry point: emits ClassFacts whose computed WMC, NPM and RFC
/// land exactly in the configured ranges; CBO is padded up to its range but
/// floored by the planted structural dependencies, DIT is fixed at 1, LCOM
/// is approximated, NOC and Ca are emergent. Exercises the metrics engine.
struct SynthFactsSystem {
    ClassModel model;
    std::map<ClassId, TentativeLayer> truth;
};

SynthFactsSystem generate_class_facts(const SynthParams& params);

std::string truth_to_csv(const std::map<ClassId, TentativeLayer>& truth);
std::map<ClassId, TentativeLayer> truth_from_csv(std::string_view text);

}  // namespace archrec
