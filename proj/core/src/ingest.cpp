#include "archrec/ingest.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace archrec {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) tokens.emplace_back(line.substr(start, i - start));
    }
    return tokens;
}

// Yields (lineNumber, content) pairs, stripping CR, blanks and '#' comments.
struct LineReader {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t lineNo = 0;

    bool next(std::size_t& outLine, std::string_view& outContent) {
        while (pos <= text.size()) {
            if (pos == text.size()) return false;
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            std::string_view line = text.substr(pos, end - pos);
            pos = end + 1;
            ++lineNo;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            std::size_t first = line.find_first_not_of(" \t");
            if (first == std::string_view::npos) continue;
            if (line[first] == '#') continue;
            outLine = lineNo;
            outContent = line.substr(first);
            return true;
        }
        return false;
    }
};

// "name(t1,t2)" -> name + parameter types
bool parse_signature(const std::string& token, std::string& name,
                     std::vector<std::string>& params) {
    auto open = token.find('(');
    if (open == std::string::npos || token.back() != ')') return false;
    name = token.substr(0, open);
    if (name.empty()) return false;
    std::string inner = token.substr(open + 1, token.size() - open - 2);
    params.clear();
    if (inner.empty()) return true;
    std::stringstream ss(inner);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) return false;
        params.push_back(part);
    }
    return true;
}

}  // namespace

ClassModel parse_class_facts(std::string_view text) {
    ClassModel model;
    ClassFacts* current = nullptr;
    MethodFacts* currentMethod = nullptr;

    LineReader reader{text};
    std::size_t lineNo;
    std::string_view content;
    while (reader.next(lineNo, content)) {
        auto tokens = split_ws(content);
        const std::string& keyword = tokens[0];

        if (keyword == "class" || keyword == "interface") {
            if (tokens.size() != 2)
                throw ParseError(lineNo, "expected: " + keyword + " <name>");
            ClassId id{tokens[1]};
            if (model.classes.count(id))
                throw ParseError(lineNo, "duplicate class id " + id.name);
            ClassFacts facts;
            facts.id = id;
            facts.kind = keyword == "interface" ? ClassKind::Interface
                                                : ClassKind::Class;
            auto [it, ok] = model.classes.emplace(id, std::move(facts));
            current = &it->second;
            currentMethod = nullptr;
            continue;
        }
        if (!current)
            throw ParseError(lineNo, "'" + keyword + "' outside a class block");

        if (keyword == "extends") {
            if (tokens.size() != 2)
                throw ParseError(lineNo, "expected: extends <name>");
            current->superclass = tokens[1];
            currentMethod = nullptr;
        } else if (keyword == "implements") {
            if (tokens.size() < 2)
                throw ParseError(lineNo, "expected: implements <name>...");
            for (std::size_t i = 1; i < tokens.size(); ++i)
                current->interfaces.insert(tokens[i]);
            currentMethod = nullptr;
        } else if (keyword == "field") {
            if (tokens.size() != 4)
                throw ParseError(lineNo, "expected: field <name> <type> <visibility>");
            auto vis = visibility_from_string(tokens[3]);
            if (!vis)
                throw ParseError(lineNo, "unknown visibility '" + tokens[3] + "'");
            current->fields.push_back({tokens[1], tokens[2], *vis});
            currentMethod = nullptr;
        } else if (keyword == "method") {
            if (tokens.size() != 4)
                throw ParseError(
                    lineNo, "expected: method <name(params)> <returnType> <visibility>");
            MethodFacts m;
            if (!parse_signature(tokens[1], m.name, m.paramTypes))
                throw ParseError(lineNo, "malformed signature '" + tokens[1] + "'");
            m.returnType = tokens[2];
            auto vis = visibility_from_string(tokens[3]);
            if (!vis)
                throw ParseError(lineNo, "unknown visibility '" + tokens[3] + "'");
            m.visibility = *vis;
            current->methods.push_back(std::move(m));
            currentMethod = &current->methods.back();
        } else if (keyword == "invokes") {
            if (!currentMethod)
                throw ParseError(lineNo, "'invokes' outside a method block");
            if (tokens.size() != 3)
                throw ParseError(lineNo, "expected: invokes <receiver> <signature>");
            std::string name;
            std::vector<std::string> params;
            if (!parse_signature(tokens[2], name, params))
                throw ParseError(lineNo, "malformed signature '" + tokens[2] + "'");
            currentMethod->invoked.insert({tokens[1], tokens[2]});
        } else if (keyword == "accesses") {
            if (!currentMethod)
                throw ParseError(lineNo, "'accesses' outside a method block");
            if (tokens.size() != 3)
                throw ParseError(lineNo, "expected: accesses <owner> <field>");
            currentMethod->accessedFields.insert({tokens[1], tokens[2]});
        } else if (keyword == "references") {
            if (!currentMethod)
                throw ParseError(lineNo, "'references' outside a method block");
            if (tokens.size() < 2)
                throw ParseError(lineNo, "expected: references <type>...");
            for (std::size_t i = 1; i < tokens.size(); ++i)
                currentMethod->referencedTypes.insert(tokens[i]);
        } else {
            throw ParseError(lineNo, "unknown keyword '" + keyword + "'");
        }
    }
    return model;
}

std::string format_class_facts(const ClassModel& model) {
    std::ostringstream out;
    for (const auto& [id, facts] : model.classes) {
        out << (facts.kind == ClassKind::Interface ? "interface " : "class ")
            << id.name << '\n';
        if (facts.superclass) out << "  extends " << *facts.superclass << '\n';
        if (!facts.interfaces.empty()) {
            out << "  implements";
            for (const auto& iface : facts.interfaces) out << ' ' << iface;
            out << '\n';
        }
        for (const auto& field : facts.fields)
            out << "  field " << field.name << ' ' << field.type << ' '
                << to_string(field.visibility) << '\n';
        for (const auto& m : facts.methods) {
            out << "  method " << m.signature() << ' ' << m.returnType << ' '
                << to_string(m.visibility) << '\n';
            for (const auto& [receiver, sig] : m.invoked)
                out << "    invokes " << receiver << ' ' << sig << '\n';
            for (const auto& [owner, field] : m.accessedFields)
                out << "    accesses " << owner << ' ' << field << '\n';
            if (!m.referencedTypes.empty()) {
                out << "    references";
                for (const auto& t : m.referencedTypes) out << ' ' << t;
                out << '\n';
            }
        }
    }
    return out.str();
}

namespace {

long long parse_metric_token(const std::string& token, std::size_t lineNo) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || value < 0)
        throw ParseError(lineNo, "expected non-negative integer, got '" + token + "'");
    return value;
}

}  // namespace

MetricsTable parse_ckjm_metrics(std::string_view text) {
    MetricsTable table;
    LineReader reader{text};
    std::size_t lineNo;
    std::string_view content;
    while (reader.next(lineNo, content)) {
        auto tokens = split_ws(content);
        if (tokens.size() != 9)
            throw ParseError(lineNo, "expected 9 tokens (class + 8 metrics), got " +
                                         std::to_string(tokens.size()));
        ClassId id{tokens[0]};
        if (table.rows.count(id))
            throw ParseError(lineNo, "duplicate class name " + id.name);
        MetricVector v;
        v.wmc = parse_metric_token(tokens[1], lineNo);
        v.dit = parse_metric_token(tokens[2], lineNo);
        v.noc = parse_metric_token(tokens[3], lineNo);
        v.cbo = parse_metric_token(tokens[4], lineNo);
        v.rfc = parse_metric_token(tokens[5], lineNo);
        v.lcom = parse_metric_token(tokens[6], lineNo);
        v.ca = parse_metric_token(tokens[7], lineNo);
        v.npm = parse_metric_token(tokens[8], lineNo);
        table.rows[id] = v;
    }
    return table;
}

std::string format_ckjm_metrics(const MetricsTable& table) {
    std::ostringstream out;
    for (const auto& [id, v] : table.rows) {
        out << id.name;
        for (std::size_t i = 0; i < 8; ++i) out << ' ' << v.at(i);
        out << '\n';
    }
    return out.str();
}

EdgeList parse_edges(std::string_view text) {
    EdgeList result;
    LineReader reader{text};
    std::size_t lineNo;
    std::string_view content;
    while (reader.next(lineNo, content)) {
        std::string from, to;
        auto arrow = content.find("->");
        if (arrow != std::string_view::npos) {
            from = std::string(content.substr(0, arrow));
            to = std::string(content.substr(arrow + 2));
        } else {
            auto comma = content.find(',');
            if (comma == std::string_view::npos)
                throw ParseError(lineNo, "expected 'FROM -> TO' or 'FROM,TO'");
            from = std::string(content.substr(0, comma));
            to = std::string(content.substr(comma + 1));
        }
        auto trim = [](std::string& s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t");
            s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
        };
        trim(from);
        trim(to);
        if (from.empty() || to.empty())
            throw ParseError(lineNo, "empty endpoint in edge");
        if (from == to) {
            ++result.selfEdgesDropped;
            continue;
        }
        result.edges.insert({ClassId{from}, ClassId{to}});
    }
    return result;
}

std::string format_edges(const EdgeList& edges) {
    std::ostringstream out;
    for (const auto& [from, to] : edges.edges)
        out << from.name << " -> " << to.name << '\n';
    return out.str();
}

}  // namespace archrec
