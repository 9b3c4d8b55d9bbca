#include "archrec/eval.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

namespace archrec {

long long ConfusionMatrix::row_sum(int layer) const {
    long long sum = 0;
    for (int p = 0; p < 4; ++p) sum += counts[layer - 1][p];
    return sum;
}

long long ConfusionMatrix::column_sum(int layer) const {
    long long sum = 0;
    for (int a = 0; a < 4; ++a) sum += counts[a][layer - 1];
    return sum;
}

ConfusionMatrix confusion(const std::map<ClassId, TentativeLayer>& predictions,
                          const std::map<ClassId, TentativeLayer>& truth) {
    if (predictions.size() != truth.size())
        throw std::invalid_argument("confusion: key sets differ in size");
    ConfusionMatrix cm;
    for (const auto& [id, actual] : truth) {
        auto it = predictions.find(id);
        if (it == predictions.end())
            throw std::invalid_argument("confusion: no prediction for " + id.name);
        ++cm.counts[layer_index(actual) - 1][layer_index(it->second) - 1];
        ++cm.n;
    }
    return cm;
}

EvaluationReport precision_recall(const ConfusionMatrix& cm, const std::string& mode) {
    EvaluationReport report;
    report.mode = mode;
    report.matrix = cm;
    long long correct = 0;
    for (int layer = 1; layer <= 4; ++layer) {
        long long diag = cm.diagonal(layer);
        long long col = cm.column_sum(layer);
        long long row = cm.row_sum(layer);
        report.precision[layer - 1] =
            col == 0 ? 0.0 : static_cast<double>(diag) / static_cast<double>(col);
        report.recall[layer - 1] =
            row == 0 ? 0.0 : static_cast<double>(diag) / static_cast<double>(row);
        correct += diag;
    }
    report.accuracy =
        cm.n == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(cm.n);
    return report;
}

namespace {

ConfusionMatrix score_rows(const RuleSet& rs, const NominalDataset& data,
                           const std::vector<std::size_t>& rows) {
    ConfusionMatrix cm;
    for (std::size_t r : rows) {
        int predicted = predict(rs, data, r);
        ++cm.counts[data.labels[r] - 1][predicted - 1];
        ++cm.n;
    }
    return cm;
}

NominalDataset subset(const NominalDataset& data, const std::vector<std::size_t>& rows) {
    NominalDataset out;
    out.attributes = data.attributes;
    out.domainSizes = data.domainSizes;
    for (std::size_t r : rows) {
        out.ids.push_back(data.ids[r]);
        out.rows.push_back(data.rows[r]);
        out.labels.push_back(data.labels[r]);
    }
    return out;
}

template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng() % i]);
}

}  // namespace

EvaluationReport resubstitute(const NominalDataset& data, const RipperParams& params) {
    RuleSet rs = learn_ripper(data, params);
    std::vector<std::size_t> all(data.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return precision_recall(score_rows(rs, data, all), "resubstitution");
}

EvaluationReport cross_validate(const NominalDataset& data, int k, std::uint64_t seed,
                                const RipperParams& learnerParams) {
    if (k < 2) throw std::invalid_argument("cross_validate: need k >= 2");
    if (static_cast<std::size_t>(k) > data.size())
        throw std::invalid_argument("cross_validate: more folds than rows");

    // canonical order keyed by ClassId, then a seeded stratified deal
    std::vector<std::size_t> order(data.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return data.ids[a] < data.ids[b];
    });

    std::mt19937_64 rng(seed);
    std::map<int, std::vector<std::size_t>> byLabel;
    for (std::size_t r : order) byLabel[data.labels[r]].push_back(r);

    std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
    std::size_t dealt = 0;
    for (auto& [label, members] : byLabel) {
        seeded_shuffle(members, rng);
        for (std::size_t r : members)
            folds[dealt++ % static_cast<std::size_t>(k)].push_back(r);
    }

    ConfusionMatrix total;
    for (int f = 0; f < k; ++f) {
        std::vector<std::size_t> trainRows;
        for (int g = 0; g < k; ++g)
            if (g != f)
                trainRows.insert(trainRows.end(), folds[static_cast<std::size_t>(g)].begin(),
                                 folds[static_cast<std::size_t>(g)].end());
        std::sort(trainRows.begin(), trainRows.end());
        NominalDataset train = subset(data, trainRows);
        RuleSet rs = learn_ripper(train, learnerParams);
        ConfusionMatrix cm = score_rows(rs, data, folds[static_cast<std::size_t>(f)]);
        for (int a = 0; a < 4; ++a)
            for (int p = 0; p < 4; ++p) total.counts[a][p] += cm.counts[a][p];
        total.n += cm.n;
    }
    return precision_recall(total, "cv:" + std::to_string(k));
}

}  // namespace archrec
