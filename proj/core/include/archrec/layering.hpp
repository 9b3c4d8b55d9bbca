#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "archrec/model.hpp"

namespace archrec {

/// Class-level dependency graph. No self-edges; endpoints are always nodes.
struct DependencyGraph {
    std::set<ClassId> nodes;
    std::set<std::pair<ClassId, ClassId>> edges;

    void add_node(ClassId id) { nodes.insert(std::move(id)); }
    void add_edge(const ClassId& from, const ClassId& to);
};

/// Strongly connected components and their quotient DAG.
struct Condensation {
    std::vector<std::set<ClassId>> components;
    std::map<ClassId, std::size_t> componentOf;
    std::set<std::pair<std::size_t, std::size_t>> dagEdges;
};

struct LayerAssignment {
    std::map<ClassId, int> dlayerOf;
    int maxLayer = 0;
};

/// One inclusive integer range per tentative layer, lowest first.
struct BinEdges {
    struct Range {
        int lo;
        int hi;
        bool operator==(const Range&) const = default;
    };
    std::array<Range, 4> bins;
};

/// Edge a->b iff b is an in-model class (other than a) appearing anywhere in
/// a's reference set: superclass, interfaces, field types, method
/// parameter/return types, invoked receivers, accessed-field owners,
/// referencedTypes. External references produce no edges.
DependencyGraph build_graph(const ClassModel& model);

/// Graph assembled from an explicit edge list restricted to a known node set.
/// Edges touching unknown classes are dropped; the drop count is returned.
DependencyGraph graph_from_edges(
    const std::set<ClassId>& nodes,
    const std::set<std::pair<ClassId, ClassId>>& edges,
    std::size_t* droppedEdges = nullptr);

Condensation condense(const DependencyGraph& graph);

/// D-layer of a component: 0 for sinks, else 1 + max over successors.
/// Classes inherit their component's layer.
LayerAssignment assign_dlayers(const Condensation& cond);

/// Splits 0..maxLayer into four contiguous ranges; the remainder widens the
/// lowest bins. Throws std::invalid_argument when maxLayer < 3.
BinEdges compute_bin_edges(int maxLayer);

std::pair<BinEdges, std::map<ClassId, TentativeLayer>> bin_tentative(
    const LayerAssignment& assign);

/// CSV "class,dlayer,tentative_layer", one row per class, sorted by class.
std::string layers_to_csv(const LayerAssignment& assign,
                          const std::map<ClassId, TentativeLayer>& layers);

}  // namespace archrec
