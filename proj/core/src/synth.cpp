#include "archrec/synth.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace archrec {

namespace {

// Draws avoid std::uniform_*_distribution so output is identical across
// standard library implementations.
long long draw_int(std::mt19937_64& rng, long long lo, long long hi) {
    if (lo >= hi) return lo;
    return lo + static_cast<long long>(
                    rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

bool draw_prob(std::mt19937_64& rng, double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

std::string pad_name(int layer, std::size_t j) {
    return "synth.l" + std::to_string(layer) + ".Spine" + std::to_string(j);
}

std::string class_name(int layer, std::size_t i) {
    return "synth.l" + std::to_string(layer) + ".Class" + std::to_string(i);
}

void check_params(const SynthParams& p) {
    for (std::size_t n : p.classesPerLayer)
        if (n < 1) throw std::invalid_argument("synth: each layer needs >= 1 class");
    if (p.spineDepth < 1) throw std::invalid_argument("synth: spineDepth >= 1");
    if (p.cycleProb > 0.0 && p.spineDepth < 2)
        throw std::invalid_argument("synth: cycleProb > 0 requires spineDepth >= 2");
    for (double prob : {p.downDepProb, p.skipDepProb, p.cycleProb})
        if (prob < 0.0 || prob > 1.0)
            throw std::invalid_argument("synth: probabilities must lie in [0,1]");
    for (const auto& profile : p.metricProfiles)
        for (const auto& range : profile)
            if (range.lo < 0 || range.hi < range.lo)
                throw std::invalid_argument("synth: malformed metric range");
}

MetricVector sample_metrics(std::mt19937_64& rng, const LayerProfile& profile) {
    MetricVector v;
    v.wmc = draw_int(rng, profile[0].lo, profile[0].hi);
    v.dit = std::max<long long>(1, draw_int(rng, profile[1].lo, profile[1].hi));
    v.noc = draw_int(rng, profile[2].lo, profile[2].hi);
    v.cbo = draw_int(rng, profile[3].lo, profile[3].hi);
    v.rfc = draw_int(rng, profile[4].lo, profile[4].hi);
    v.lcom = draw_int(rng, profile[5].lo, profile[5].hi);
    v.ca = draw_int(rng, profile[6].lo, profile[6].hi);
    v.npm = std::min(v.wmc, draw_int(rng, profile[7].lo, profile[7].hi));
    return v;
}

}  // namespace

std::array<LayerProfile, 4> SynthParams::default_profiles() {
    // CBO ranges are pairwise disjoint, so the planted layer is learnable
    // from the metrics alone; the rest follow the layer roles (storage-heavy
    // bottom, widget-style top).
    auto r = [](long long lo, long long hi) { return IntRange{lo, hi}; };
    LayerProfile infrastructure = {r(1, 8),   r(1, 2), r(0, 2), r(0, 2),
                                   r(0, 9),   r(0, 6), r(6, 20), r(1, 6)};
    LayerProfile business = {r(15, 40), r(2, 5), r(0, 3), r(9, 14),
                             r(40, 80), r(10, 60), r(3, 10), r(5, 20)};
    LayerProfile controllers = {r(5, 14), r(1, 3), r(0, 1), r(3, 5),
                                r(10, 24), r(2, 12), r(0, 2), r(3, 10)};
    LayerProfile ui = {r(8, 20), r(1, 2), r(0, 1), r(6, 8),
                       r(25, 39), r(0, 2), r(0, 2), r(4, 12)};
    return {infrastructure, business, controllers, ui};
}

SynthSystem generate(const SynthParams& params) {
    check_params(params);
    std::mt19937_64 rng(params.seed);
    const std::size_t depth = params.spineDepth;

    SynthSystem sys;
    std::array<std::vector<ClassId>, 5> layerMembers;  // index 1..4
    std::array<std::vector<ClassId>, 5> regularMembers;

    // Spine chains pin the D-layer range of each planted layer: spine j of
    // layer k sits at D-layer (k-1)*depth + j.
    for (int layer = 1; layer <= 4; ++layer) {
        for (std::size_t j = 0; j < depth; ++j) {
            ClassId id{pad_name(layer, j)};
            sys.graph.add_node(id);
            sys.truth[id] = layer_from_index(layer);
            layerMembers[layer].push_back(id);
            if (j > 0)
                sys.graph.add_edge(id, ClassId{pad_name(layer, j - 1)});
            else if (layer > 1)
                sys.graph.add_edge(id, ClassId{pad_name(layer - 1, depth - 1)});
        }
        for (std::size_t i = 0; i < params.classesPerLayer[layer - 1]; ++i) {
            ClassId id{class_name(layer, i)};
            sys.graph.add_node(id);
            sys.truth[id] = layer_from_index(layer);
            layerMembers[layer].push_back(id);
            regularMembers[layer].push_back(id);
            std::size_t r = static_cast<std::size_t>(
                draw_int(rng, 0, static_cast<long long>(depth) - 1));
            if (r > 0)
                sys.graph.add_edge(id, ClassId{pad_name(layer, r - 1)});
            else if (layer > 1)
                sys.graph.add_edge(id, ClassId{pad_name(layer - 1, depth - 1)});
        }
    }

    // Random downward and skip dependencies never push a class out of its
    // planted D-layer band. Only regular classes emit them: a spine class
    // pointing at a regular one could otherwise close a loop through an
    // upward cycle edge and collapse part of the backbone chain.
    for (int layer = 2; layer <= 4; ++layer) {
        for (const auto& from : regularMembers[layer]) {
            for (const auto& to : layerMembers[layer - 1])
                if (draw_prob(rng, params.downDepProb)) sys.graph.add_edge(from, to);
            for (int below = 1; below <= layer - 2; ++below)
                for (const auto& to : layerMembers[below])
                    if (draw_prob(rng, params.skipDepProb))
                        sys.graph.add_edge(from, to);
        }
    }

    // Upward edges forming two-class cycles; restricted to the lower layer
    // pairs and to non-spine classes so the perturbation can neither raise
    // maxLayer nor collapse the spine chain.
    for (int layer = 1; layer <= 2; ++layer) {
        const auto& upper = regularMembers[layer + 1];
        for (const auto& from : regularMembers[layer]) {
            if (!draw_prob(rng, params.cycleProb)) continue;
            const auto& partner = upper[static_cast<std::size_t>(
                draw_int(rng, 0, static_cast<long long>(upper.size()) - 1))];
            sys.graph.add_edge(partner, from);
            sys.graph.add_edge(from, partner);
        }
    }

    for (int layer = 1; layer <= 4; ++layer)
        for (const auto& id : layerMembers[layer])
            sys.metrics.rows[id] =
                sample_metrics(rng, params.metricProfiles[layer - 1]);

    return sys;
}

SynthFactsSystem generate_class_facts(const SynthParams& params) {
    check_params(params);
    SynthSystem base = generate(params);

    // Outgoing dependency targets per class, needed to embed the planted
    // graph into reference sets.
    std::map<ClassId, std::vector<ClassId>> deps;
    for (const auto& [from, to] : base.graph.edges) deps[from].push_back(to);

    SynthFactsSystem sys;
    sys.truth = base.truth;
    for (const auto& [id, target] : base.metrics.rows) {
        ClassFacts facts;
        facts.id = id;

        long long wmcTarget = std::max<long long>(target.wmc, 1);
        long long npmTarget = std::min(target.npm, wmcTarget);
        for (long long m = 0; m < wmcTarget; ++m) {
            MethodFacts method;
            method.name = "m" + std::to_string(m);
            method.visibility =
                m < npmTarget ? Visibility::Public : Visibility::Private;
            facts.methods.push_back(std::move(method));
        }

        // RFC = wmc + distinct remote invocations; one shared external
        // receiver keeps the CBO contribution at a single type.
        long long remote = std::max<long long>(target.rfc - wmcTarget, 0);
        std::string receiver = "ext.Service";
        for (long long i = 0; i < remote; ++i)
            facts.methods[0].invoked.insert(
                {receiver, "call" + std::to_string(i) + "()"});

        // CBO: planted graph edges first, external padding up to the target.
        std::size_t structural = deps.count(id) ? deps[id].size() : 0;
        for (const auto& to : deps[id])
            facts.methods[0].referencedTypes.insert(to.name);
        long long cboTarget =
            std::max<long long>(target.cbo,
                                static_cast<long long>(structural) + (remote > 0 ? 1 : 0));
        long long padding = cboTarget - static_cast<long long>(structural) -
                            (remote > 0 ? 1 : 0);
        for (long long i = 0; i < padding; ++i)
            facts.methods[0].referencedTypes.insert("ext.Pad" + std::to_string(i));

        // LCOM: j methods share one field, the rest touch distinct fields;
        // pick the j whose P-Q lands closest to the target.
        long long w = wmcTarget;
        long long bestJ = 0, bestErr = -1;
        for (long long j = 0; j <= w; ++j) {
            long long solo = w - j;
            long long p = solo * (solo - 1) / 2 + j * solo;
            long long q = j * (j - 1) / 2;
            long long value = std::max<long long>(p - q, 0);
            long long err = std::abs(value - target.lcom);
            if (bestErr < 0 || err < bestErr) {
                bestErr = err;
                bestJ = j;
            }
        }
        facts.fields.push_back({"shared", "ext.State", Visibility::Private});
        for (long long m = 0; m < w; ++m) {
            if (m < bestJ) {
                facts.methods[static_cast<std::size_t>(m)].accessedFields.insert(
                    {id.name, "shared"});
            } else {
                std::string fieldName = "own" + std::to_string(m);
                facts.fields.push_back({fieldName, "int", Visibility::Private});
                facts.methods[static_cast<std::size_t>(m)].accessedFields.insert(
                    {id.name, fieldName});
            }
        }

        sys.model.classes[id] = std::move(facts);
    }
    return sys;
}

std::string truth_to_csv(const std::map<ClassId, TentativeLayer>& truth) {
    std::ostringstream out;
    out << "class,layer\n";
    for (const auto& [id, layer] : truth)
        out << id.name << ',' << layer_index(layer) << '\n';
    return out.str();
}

std::map<ClassId, TentativeLayer> truth_from_csv(std::string_view text) {
    std::map<ClassId, TentativeLayer> truth;
    std::istringstream in{std::string(text)};
    std::string line;
    bool headerSeen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!headerSeen) {
            if (line != "class,layer")
                throw std::runtime_error("truth CSV: bad header");
            headerSeen = true;
            continue;
        }
        auto comma = line.rfind(',');
        if (comma == std::string::npos)
            throw std::runtime_error("truth CSV: malformed row '" + line + "'");
        truth[ClassId{line.substr(0, comma)}] =
            layer_from_index(std::stoi(line.substr(comma + 1)));
    }
    if (!headerSeen) throw std::runtime_error("truth CSV: empty input");
    return truth;
}

}  // namespace archrec
