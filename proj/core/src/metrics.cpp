#include "archrec/metrics.hpp"

#include <algorithm>
#include <map>

namespace archrec {

bool is_primitive_or_void(std::string_view type) {
    static const std::set<std::string, std::less<>> kPrimitives = {
        "boolean", "byte", "char", "double", "float", "int", "long", "short",
        "void"};
    return kPrimitives.count(type) > 0;
}

bool counts_as_method(const MethodFacts& m, const MetricsOptions& opts) {
    if (m.name == "<init>") return opts.constructorsCount;
    if (m.name == "<clinit>") return opts.initializersCount;
    return true;
}

std::set<std::string> reference_set(const ClassFacts& c) {
    std::set<std::string> refs;
    auto add = [&](const std::string& type) {
        if (type.empty() || type == c.id.name || is_primitive_or_void(type)) return;
        refs.insert(type);
    };
    if (c.superclass) add(*c.superclass);
    for (const auto& iface : c.interfaces) add(iface);
    for (const auto& field : c.fields) add(field.type);
    for (const auto& m : c.methods) {
        for (const auto& p : m.paramTypes) add(p);
        add(m.returnType);
        for (const auto& [receiver, sig] : m.invoked) add(receiver);
        for (const auto& [owner, field] : m.accessedFields) add(owner);
        for (const auto& t : m.referencedTypes) add(t);
    }
    return refs;
}

long long wmc(const ClassFacts& c, const MetricsOptions& opts) {
    return std::count_if(c.methods.begin(), c.methods.end(),
                         [&](const MethodFacts& m) { return counts_as_method(m, opts); });
}

long long dit(const ClassFacts& c, const ClassModel& model) {
    // In-model ancestors plus one implicit external root.
    long long depth = 1;
    const ClassFacts* cur = &c;
    std::size_t hops = 0;  // guard against unvalidated cyclic input
    while (cur->superclass && model.contains(*cur->superclass) &&
           hops++ <= model.classes.size()) {
        ++depth;
        cur = model.find(*cur->superclass);
    }
    return depth;
}

long long noc(const ClassFacts& c, const ClassModel& model) {
    long long children = 0;
    for (const auto& [id, facts] : model.classes)
        if (facts.superclass && *facts.superclass == c.id.name && id != c.id)
            ++children;
    return children;
}

long long cbo(const ClassFacts& c) {
    return static_cast<long long>(reference_set(c).size());
}

long long rfc(const ClassFacts& c, const MetricsOptions& opts) {
    std::set<std::string> ownSignatures;
    for (const auto& m : c.methods)
        if (counts_as_method(m, opts)) ownSignatures.insert(m.signature());

    std::set<std::pair<std::string, std::string>> remote;
    for (const auto& m : c.methods) {
        if (!counts_as_method(m, opts)) continue;
        for (const auto& call : m.invoked) {
            if (call.first == c.id.name && ownSignatures.count(call.second)) continue;
            remote.insert(call);
        }
    }
    return static_cast<long long>(ownSignatures.size() + remote.size());
}

long long lcom(const ClassFacts& c, const MetricsOptions& opts) {
    std::vector<std::set<std::string>> accessed;
    for (const auto& m : c.methods) {
        if (!counts_as_method(m, opts)) continue;
        std::set<std::string> own;
        for (const auto& [owner, field] : m.accessedFields)
            if (owner == c.id.name) own.insert(field);
        accessed.push_back(std::move(own));
    }
    long long disjoint = 0, sharing = 0;
    for (std::size_t i = 0; i < accessed.size(); ++i) {
        for (std::size_t j = i + 1; j < accessed.size(); ++j) {
            bool share = std::any_of(accessed[i].begin(), accessed[i].end(),
                                     [&](const std::string& f) {
                                         return accessed[j].count(f) > 0;
                                     });
            if (share)
                ++sharing;
            else
                ++disjoint;
        }
    }
    return std::max<long long>(disjoint - sharing, 0);
}

long long ca(const ClassFacts& c, const ClassModel& model) {
    long long afferent = 0;
    for (const auto& [id, facts] : model.classes) {
        if (id == c.id) continue;
        if (reference_set(facts).count(c.id.name)) ++afferent;
    }
    return afferent;
}

long long npm(const ClassFacts& c, const MetricsOptions& opts) {
    return std::count_if(c.methods.begin(), c.methods.end(),
                         [&](const MethodFacts& m) {
                             return counts_as_method(m, opts) &&
                                    m.visibility == Visibility::Public;
                         });
}

MetricsTable compute_metrics(const ClassModel& model, const MetricsOptions& opts) {
    // Reverse indices so NOC/Ca are one pass instead of quadratic.
    std::map<std::string, long long> childCount;
    std::map<std::string, long long> afferentCount;
    for (const auto& [id, facts] : model.classes) {
        if (facts.superclass && *facts.superclass != id.name)
            ++childCount[*facts.superclass];
        for (const auto& ref : reference_set(facts))
            if (model.contains(ref)) ++afferentCount[ref];
    }

    MetricsTable table;
    for (const auto& [id, facts] : model.classes) {
        MetricVector v;
        v.wmc = wmc(facts, opts);
        v.dit = dit(facts, model);
        auto childIt = childCount.find(id.name);
        v.noc = childIt == childCount.end() ? 0 : childIt->second;
        v.cbo = cbo(facts);
        v.rfc = rfc(facts, opts);
        v.lcom = lcom(facts, opts);
        auto caIt = afferentCount.find(id.name);
        v.ca = caIt == afferentCount.end() ? 0 : caIt->second;
        v.npm = npm(facts, opts);
        table.rows[id] = v;
    }
    return table;
}

}  // namespace archrec
