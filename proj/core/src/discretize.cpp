#include "archrec/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace archrec {

double entropy(std::span<const int> labels) {
    if (labels.empty()) return 0.0;
    std::map<int, std::size_t> counts;
    for (int l : labels) ++counts[l];
    double n = static_cast<double>(labels.size());
    double h = 0.0;
    for (const auto& [label, count] : counts) {
        double p = static_cast<double>(count) / n;
        h -= p * std::log2(p);
    }
    return h;
}

namespace {

struct SortedColumn {
    std::vector<double> values;  // sorted
    std::vector<int> labels;     // aligned with values
};

SortedColumn sort_column(std::span<const double> values, std::span<const int> labels) {
    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] < values[b];
        return labels[a] < labels[b];
    });
    SortedColumn col;
    col.values.reserve(values.size());
    col.labels.reserve(values.size());
    for (std::size_t i : order) {
        col.values.push_back(values[i]);
        col.labels.push_back(labels[i]);
    }
    return col;
}

// Boundary candidates: midpoints between adjacent distinct values whose
// label sets differ.
std::vector<std::pair<double, std::size_t>> boundary_candidates(const SortedColumn& col) {
    std::vector<std::pair<double, std::size_t>> candidates;  // (cut, left count)
    std::size_t n = col.values.size();
    std::size_t i = 0;
    std::set<int> prevLabels;
    double prevValue = 0;
    bool havePrev = false;
    while (i < n) {
        std::size_t j = i;
        std::set<int> groupLabels{col.labels[i]};
        while (j + 1 < n && col.values[j + 1] == col.values[i]) {
            ++j;
            groupLabels.insert(col.labels[j]);
        }
        if (havePrev && groupLabels != prevLabels)
            candidates.push_back({(prevValue + col.values[i]) / 2.0, i});
        prevLabels = std::move(groupLabels);
        prevValue = col.values[i];
        havePrev = true;
        i = j + 1;
    }
    return candidates;
}

}  // namespace

std::optional<CutCandidate> best_cut(std::span<const double> values,
                                     std::span<const int> labels) {
    if (values.size() != labels.size())
        throw std::invalid_argument("best_cut: length mismatch");
    if (values.size() < 2) return std::nullopt;

    SortedColumn col = sort_column(values, labels);
    auto candidates = boundary_candidates(col);
    if (candidates.empty()) return std::nullopt;

    double total = entropy(col.labels);
    double n = static_cast<double>(col.labels.size());
    std::optional<CutCandidate> best;
    for (const auto& [cut, leftCount] : candidates) {
        std::span<const int> left(col.labels.data(), leftCount);
        std::span<const int> right(col.labels.data() + leftCount,
                                   col.labels.size() - leftCount);
        double gain = total -
                      (static_cast<double>(left.size()) / n) * entropy(left) -
                      (static_cast<double>(right.size()) / n) * entropy(right);
        if (!best || gain > best->gain) best = CutCandidate{cut, gain};
    }
    return best;
}

bool mdlp_accept(double gain, std::size_t n, int k, int k1, int k2,
                 double ent, double ent1, double ent2) {
    if (n < 2) return false;
    double nd = static_cast<double>(n);
    double delta = std::log2(std::pow(3.0, k) - 2.0) -
                   (k * ent - k1 * ent1 - k2 * ent2);
    double threshold = std::log2(nd - 1.0) / nd + delta / nd;
    return gain > threshold;
}

namespace {

int distinct_labels(std::span<const int> labels) {
    return static_cast<int>(std::set<int>(labels.begin(), labels.end()).size());
}

void mdlp_recurse(const SortedColumn& col, std::size_t lo, std::size_t hi,
                  std::vector<double>& cuts) {
    std::span<const double> values(col.values.data() + lo, hi - lo);
    std::span<const int> labels(col.labels.data() + lo, hi - lo);
    auto cand = best_cut(values, labels);
    if (!cand) return;

    std::size_t mid = lo;
    while (mid < hi && col.values[mid] <= cand->cut) ++mid;
    std::span<const int> left(col.labels.data() + lo, mid - lo);
    std::span<const int> right(col.labels.data() + mid, hi - mid);
    bool accepted = mdlp_accept(cand->gain, hi - lo, distinct_labels(labels),
                                distinct_labels(left), distinct_labels(right),
                                entropy(labels), entropy(left), entropy(right));
    if (!accepted) return;
    cuts.push_back(cand->cut);
    mdlp_recurse(col, lo, mid, cuts);
    mdlp_recurse(col, mid, hi, cuts);
}

}  // namespace

std::vector<double> mdlp_discretize(std::span<const double> values,
                                    std::span<const int> labels) {
    if (values.size() != labels.size())
        throw std::invalid_argument("mdlp_discretize: length mismatch");
    std::vector<double> cuts;
    if (values.size() < 2) return cuts;
    SortedColumn col = sort_column(values, labels);
    mdlp_recurse(col, 0, col.values.size(), cuts);
    std::sort(cuts.begin(), cuts.end());
    return cuts;
}

const BinningScheme::Attribute* BinningScheme::find(const std::string& name) const {
    for (const auto& attr : attributes)
        if (attr.name == name) return &attr;
    return nullptr;
}

int bin_of(double value, const std::vector<double>& cuts) {
    // right-closed intervals: bin = 1 + number of cuts strictly below value
    auto it = std::lower_bound(cuts.begin(), cuts.end(), value);
    return static_cast<int>(it - cuts.begin()) + 1;
}

int NominalDataset::attribute_index(const std::string& name) const {
    for (std::size_t i = 0; i < attributes.size(); ++i)
        if (attributes[i] == name) return static_cast<int>(i);
    return -1;
}

BinningScheme build_binning_scheme(
    const MetricsTable& table,
    const std::vector<std::string>& metricNames,
    const std::map<ClassId, int>& supervision) {
    BinningScheme scheme;
    for (const auto& name : metricNames) {
        int m = metric_index(name);
        if (m < 0) throw std::invalid_argument("unknown metric " + name);
        std::vector<double> values;
        std::vector<int> labels;
        for (const auto& [id, v] : table.rows) {
            auto it = supervision.find(id);
            if (it == supervision.end())
                throw std::invalid_argument("no supervision label for " + id.name);
            values.push_back(static_cast<double>(v.at(static_cast<std::size_t>(m))));
            labels.push_back(it->second);
        }
        scheme.attributes.push_back({name + "Bin", mdlp_discretize(values, labels)});
    }
    return scheme;
}

NominalDataset apply_bins(const MetricsTable& table,
                          const std::map<ClassId, TentativeLayer>& layers,
                          const BinningScheme& scheme) {
    NominalDataset data;
    std::vector<int> metricOf;
    for (const auto& attr : scheme.attributes) {
        if (attr.degenerate()) continue;
        std::string metricName = attr.name;
        if (metricName.size() > 3 && metricName.ends_with("Bin"))
            metricName.resize(metricName.size() - 3);
        int m = metric_index(metricName);
        if (m < 0)
            throw std::invalid_argument("scheme attribute " + attr.name +
                                        " matches no metric");
        data.attributes.push_back(attr.name);
        data.domainSizes.push_back(static_cast<int>(attr.cuts.size()) + 1);
        metricOf.push_back(m);
    }
    for (const auto& [id, v] : table.rows) {
        auto it = layers.find(id);
        if (it == layers.end())
            throw std::invalid_argument("no layer label for " + id.name);
        std::vector<int> row;
        std::size_t a = 0;
        for (const auto& attr : scheme.attributes) {
            if (attr.degenerate()) continue;
            double value = static_cast<double>(
                v.at(static_cast<std::size_t>(metricOf[a])));
            row.push_back(bin_of(value, attr.cuts));
            ++a;
        }
        data.ids.push_back(id);
        data.rows.push_back(std::move(row));
        data.labels.push_back(layer_index(it->second));
    }
    return data;
}

std::string dataset_to_csv(const NominalDataset& data) {
    std::ostringstream out;
    out << "class";
    for (const auto& attr : data.attributes) out << ',' << attr;
    out << ",label\n";
    for (std::size_t r = 0; r < data.rows.size(); ++r) {
        out << data.ids[r].name;
        for (int bin : data.rows[r]) out << ',' << bin;
        out << ',' << data.labels[r] << '\n';
    }
    return out.str();
}

NominalDataset dataset_from_csv(std::string_view text) {
    NominalDataset data;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineNo = 0;
    bool headerSeen = false;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!headerSeen) {
            if (cells.size() < 2 || cells.front() != "class" || cells.back() != "label")
                throw std::runtime_error("dataset CSV: bad header at line " +
                                         std::to_string(lineNo));
            data.attributes.assign(cells.begin() + 1, cells.end() - 1);
            data.domainSizes.assign(data.attributes.size(), 0);
            headerSeen = true;
            continue;
        }
        if (cells.size() != data.attributes.size() + 2)
            throw std::runtime_error("dataset CSV: wrong cell count at line " +
                                     std::to_string(lineNo));
        data.ids.push_back(ClassId{cells.front()});
        std::vector<int> row;
        for (std::size_t i = 1; i + 1 < cells.size(); ++i) {
            int bin = std::stoi(cells[i]);
            row.push_back(bin);
            data.domainSizes[i - 1] = std::max(data.domainSizes[i - 1], bin);
        }
        data.rows.push_back(std::move(row));
        data.labels.push_back(std::stoi(cells.back()));
    }
    if (!headerSeen) throw std::runtime_error("dataset CSV: empty input");
    return data;
}

std::string scheme_to_json(const BinningScheme& scheme) {
    nlohmann::json doc;
    doc["attributes"] = nlohmann::json::array();
    for (const auto& attr : scheme.attributes)
        doc["attributes"].push_back({{"name", attr.name}, {"cuts", attr.cuts}});
    return doc.dump(2) + "\n";
}

BinningScheme scheme_from_json(std::string_view text) {
    auto doc = nlohmann::json::parse(text);
    BinningScheme scheme;
    for (const auto& item : doc.at("attributes")) {
        BinningScheme::Attribute attr;
        attr.name = item.at("name").get<std::string>();
        attr.cuts = item.at("cuts").get<std::vector<double>>();
        scheme.attributes.push_back(std::move(attr));
    }
    return scheme;
}

}  // namespace archrec
