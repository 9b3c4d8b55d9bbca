#include "archrec/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace archrec {

std::string_view to_string(Visibility v) {
    switch (v) {
        case Visibility::Public: return "public";
        case Visibility::Protected: return "protected";
        case Visibility::Package: return "package";
        case Visibility::Private: return "private";
    }
    return "?";
}

std::optional<Visibility> visibility_from_string(std::string_view s) {
    if (s == "public") return Visibility::Public;
    if (s == "protected") return Visibility::Protected;
    if (s == "package") return Visibility::Package;
    if (s == "private") return Visibility::Private;
    return std::nullopt;
}

std::string MethodFacts::signature() const {
    std::string sig = name;
    sig += '(';
    for (std::size_t i = 0; i < paramTypes.size(); ++i) {
        if (i > 0) sig += ',';
        sig += paramTypes[i];
    }
    sig += ')';
    return sig;
}

bool ClassModel::contains(std::string_view name) const {
    return classes.find(ClassId{std::string(name)}) != classes.end();
}

const ClassFacts* ClassModel::find(std::string_view name) const {
    auto it = classes.find(ClassId{std::string(name)});
    return it == classes.end() ? nullptr : &it->second;
}

namespace {

bool has_whitespace(const std::string& s) {
    return std::any_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string cycle_detail(const std::vector<std::string>& members) {
    std::ostringstream out;
    out << "inheritance cycle {";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i > 0) out << ",";
        out << members[i];
    }
    out << "}";
    return out.str();
}

}  // namespace

std::vector<Violation> validate_model(const ClassModel& model) {
    std::vector<Violation> report;

    for (const auto& [id, facts] : model.classes) {
        if (id.name.empty())
            report.push_back({id.name, "empty-id", "class identifier is empty"});
        else if (has_whitespace(id.name))
            report.push_back({id.name, "whitespace-id",
                              "class identifier contains whitespace"});
        if (facts.id != id)
            report.push_back({id.name, "id-mismatch",
                              "map key does not match ClassFacts id"});
        if (facts.superclass && *facts.superclass == id.name)
            report.push_back({id.name, "self-superclass",
                              "self-superclass " + id.name});

        std::set<std::string> fieldNames;
        for (const auto& field : facts.fields)
            if (!fieldNames.insert(field.name).second)
                report.push_back({id.name, "duplicate-field",
                                  "duplicate field " + field.name});

        std::set<std::string> signatures;
        for (const auto& method : facts.methods)
            if (!signatures.insert(method.signature()).second)
                report.push_back({id.name, "duplicate-method",
                                  "duplicate method " + method.signature()});
    }

    // Cycle check on the in-model superclass relation. Each class has at
    // most one outgoing edge, so every cycle is a simple ring; report each
    // ring once, keyed by its smallest member.
    std::map<ClassId, int> state;  // 0 unvisited, 1 on stack, 2 done
    std::set<std::string> reported;
    for (const auto& [id, facts] : model.classes) {
        if (state[id] != 0) continue;
        std::vector<ClassId> path;
        ClassId cur = id;
        while (true) {
            int& s = state[cur];
            if (s == 2) break;
            if (s == 1) {
                // found a ring: the suffix of path starting at cur
                auto it = std::find(path.begin(), path.end(), cur);
                std::vector<std::string> members;
                for (; it != path.end(); ++it) members.push_back(it->name);
                std::sort(members.begin(), members.end());
                if (!members.empty() && reported.insert(members.front()).second) {
                    report.push_back({members.front(), "inheritance-cycle",
                                      cycle_detail(members)});
                }
                break;
            }
            s = 1;
            path.push_back(cur);
            const ClassFacts* facts2 = model.find(cur.name);
            if (!facts2 || !facts2->superclass || *facts2->superclass == cur.name ||
                !model.contains(*facts2->superclass))
                break;
            cur = ClassId{*facts2->superclass};
        }
        for (const auto& p : path) state[p] = 2;
    }

    return report;
}

long long MetricVector::at(std::size_t metricIndex) const {
    switch (metricIndex) {
        case 0: return wmc;
        case 1: return dit;
        case 2: return noc;
        case 3: return cbo;
        case 4: return rfc;
        case 5: return lcom;
        case 6: return ca;
        case 7: return npm;
    }
    throw std::out_of_range("metric index");
}

int metric_index(std::string_view name) {
    for (std::size_t i = 0; i < kMetricNames.size(); ++i)
        if (kMetricNames[i] == name) return static_cast<int>(i);
    return -1;
}

std::string_view layer_name(TentativeLayer layer) {
    switch (layer) {
        case TentativeLayer::Infrastructure: return "Infrastructure";
        case TentativeLayer::BusinessLogic: return "BusinessLogic";
        case TentativeLayer::Controllers: return "Controllers";
        case TentativeLayer::UserInterface: return "UserInterface";
    }
    return "?";
}

TentativeLayer layer_from_index(int index) {
    if (index < 1 || index > 4) throw std::out_of_range("layer index must be 1..4");
    return static_cast<TentativeLayer>(index);
}

}  // namespace archrec
