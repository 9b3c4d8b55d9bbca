#include "archrec/layering.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "archrec/metrics.hpp"

namespace archrec {

void DependencyGraph::add_edge(const ClassId& from, const ClassId& to) {
    if (from == to) return;
    nodes.insert(from);
    nodes.insert(to);
    edges.insert({from, to});
}

DependencyGraph build_graph(const ClassModel& model) {
    DependencyGraph graph;
    for (const auto& [id, facts] : model.classes) graph.add_node(id);
    for (const auto& [id, facts] : model.classes) {
        for (const auto& ref : reference_set(facts)) {
            if (model.contains(ref)) graph.add_edge(id, ClassId{ref});
        }
    }
    return graph;
}

DependencyGraph graph_from_edges(
    const std::set<ClassId>& nodes,
    const std::set<std::pair<ClassId, ClassId>>& edges,
    std::size_t* droppedEdges) {
    DependencyGraph graph;
    graph.nodes = nodes;
    std::size_t dropped = 0;
    for (const auto& [from, to] : edges) {
        if (nodes.count(from) && nodes.count(to))
            graph.add_edge(from, to);
        else
            ++dropped;
    }
    if (droppedEdges) *droppedEdges = dropped;
    return graph;
}

namespace {

// Iterative Tarjan over node indices; chain-shaped inputs would blow the
// stack with the recursive form.
struct TarjanState {
    const std::vector<std::vector<int>>& adj;
    std::vector<int> index, lowlink;
    std::vector<bool> onStack;
    std::vector<int> stack;
    std::vector<std::vector<int>> sccs;
    int counter = 0;

    explicit TarjanState(const std::vector<std::vector<int>>& a)
        : adj(a),
          index(a.size(), -1),
          lowlink(a.size(), 0),
          onStack(a.size(), false) {}

    void run(int root) {
        struct Frame {
            int v;
            std::size_t next;
        };
        std::vector<Frame> frames{{root, 0}};
        visit(root);
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.next < adj[f.v].size()) {
                int w = adj[f.v][f.next++];
                if (index[w] == -1) {
                    visit(w);
                    frames.push_back({w, 0});
                } else if (onStack[w]) {
                    lowlink[f.v] = std::min(lowlink[f.v], index[w]);
                }
            } else {
                if (lowlink[f.v] == index[f.v]) {
                    std::vector<int> scc;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        onStack[w] = false;
                        scc.push_back(w);
                    } while (w != f.v);
                    sccs.push_back(std::move(scc));
                }
                int v = f.v;
                frames.pop_back();
                if (!frames.empty())
                    lowlink[frames.back().v] =
                        std::min(lowlink[frames.back().v], lowlink[v]);
            }
        }
    }

    void visit(int v) {
        index[v] = lowlink[v] = counter++;
        stack.push_back(v);
        onStack[v] = true;
    }
};

}  // namespace

Condensation condense(const DependencyGraph& graph) {
    std::vector<ClassId> ids(graph.nodes.begin(), graph.nodes.end());
    std::map<ClassId, int> idx;
    for (int i = 0; i < static_cast<int>(ids.size()); ++i) idx[ids[i]] = i;

    std::vector<std::vector<int>> adj(ids.size());
    for (const auto& [from, to] : graph.edges) adj[idx[from]].push_back(idx[to]);

    TarjanState tarjan(adj);
    for (int i = 0; i < static_cast<int>(ids.size()); ++i)
        if (tarjan.index[i] == -1) tarjan.run(i);

    // Canonical component order: by smallest member, so output is
    // independent of traversal order.
    std::sort(tarjan.sccs.begin(), tarjan.sccs.end(),
              [&](const std::vector<int>& a, const std::vector<int>& b) {
                  return ids[*std::min_element(a.begin(), a.end())] <
                         ids[*std::min_element(b.begin(), b.end())];
              });

    Condensation cond;
    for (std::size_t c = 0; c < tarjan.sccs.size(); ++c) {
        std::set<ClassId> members;
        for (int v : tarjan.sccs[c]) {
            members.insert(ids[v]);
            cond.componentOf[ids[v]] = c;
        }
        cond.components.push_back(std::move(members));
    }
    for (const auto& [from, to] : graph.edges) {
        std::size_t a = cond.componentOf[from];
        std::size_t b = cond.componentOf[to];
        if (a != b) cond.dagEdges.insert({a, b});
    }
    return cond;
}

LayerAssignment assign_dlayers(const Condensation& cond) {
    std::size_t n = cond.components.size();
    std::vector<std::vector<std::size_t>> succ(n);
    for (const auto& [a, b] : cond.dagEdges) succ[a].push_back(b);

    // Longest path to a sink via memoized DFS (iterative).
    std::vector<int> layer(n, -1);
    for (std::size_t start = 0; start < n; ++start) {
        if (layer[start] != -1) continue;
        std::vector<std::size_t> work{start};
        while (!work.empty()) {
            std::size_t v = work.back();
            if (layer[v] != -1) {
                work.pop_back();
                continue;
            }
            bool ready = true;
            int best = -1;
            for (std::size_t s : succ[v]) {
                if (layer[s] == -1) {
                    work.push_back(s);
                    ready = false;
                } else {
                    best = std::max(best, layer[s]);
                }
            }
            if (ready) {
                layer[v] = best + 1;  // sinks get 0
                work.pop_back();
            }
        }
    }

    LayerAssignment assign;
    for (std::size_t c = 0; c < n; ++c) {
        for (const auto& id : cond.components[c]) assign.dlayerOf[id] = layer[c];
        assign.maxLayer = std::max(assign.maxLayer, layer[c]);
    }
    return assign;
}

BinEdges compute_bin_edges(int maxLayer) {
    if (maxLayer < 3)
        throw std::invalid_argument("too few D-layers to form four groups");
    int span = maxLayer + 1;
    int w = span / 4;
    int r = span % 4;
    BinEdges edges{};
    int lo = 0;
    for (int k = 0; k < 4; ++k) {
        int width = w + (k < r ? 1 : 0);
        edges.bins[k] = {lo, lo + width - 1};
        lo += width;
    }
    return edges;
}

std::pair<BinEdges, std::map<ClassId, TentativeLayer>> bin_tentative(
    const LayerAssignment& assign) {
    BinEdges edges = compute_bin_edges(assign.maxLayer);
    std::map<ClassId, TentativeLayer> layers;
    for (const auto& [id, d] : assign.dlayerOf) {
        for (int k = 0; k < 4; ++k) {
            if (d >= edges.bins[k].lo && d <= edges.bins[k].hi) {
                layers[id] = layer_from_index(k + 1);
                break;
            }
        }
    }
    return {edges, layers};
}

std::string layers_to_csv(const LayerAssignment& assign,
                          const std::map<ClassId, TentativeLayer>& layers) {
    std::ostringstream out;
    out << "class,dlayer,tentative_layer\n";
    for (const auto& [id, d] : assign.dlayerOf) {
        out << id.name << ',' << d << ',';
        auto it = layers.find(id);
        out << (it == layers.end() ? 0 : layer_index(it->second)) << '\n';
    }
    return out.str();
}

}  // namespace archrec
