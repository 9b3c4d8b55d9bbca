#include "archrec/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace archrec {

DescriptiveStats describe(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("describe: empty input");
    DescriptiveStats s;
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) /
             static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

namespace {

std::vector<double> average_ranks(std::span<const double> values) {
    std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

bool is_constant(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
    if (x.size() < 3) throw std::invalid_argument("spearman: need n >= 3");
    if (is_constant(x) || is_constant(y))
        throw std::invalid_argument("spearman: constant vector, correlation undefined");
    return pearson(average_ranks(x), average_ranks(y));
}

CorrelationEntry significance(double rho, std::size_t n) {
    if (n < 4) throw std::invalid_argument("significance: need n >= 4");
    rho = std::clamp(rho, -1.0, 1.0);
    CorrelationEntry e;
    e.rho = rho;
    e.n = n;
    if (std::abs(rho) >= 1.0) {
        e.pValue = 0.0;
        e.flag = SignificanceFlag::P01;
        return e;
    }
    double df = static_cast<double>(n - 2);
    double t = rho * std::sqrt(df / (1.0 - rho * rho));
    boost::math::students_t dist(df);
    e.pValue = 2.0 * boost::math::cdf(dist, -std::abs(t));
    if (e.pValue < 0.01)
        e.flag = SignificanceFlag::P01;
    else if (e.pValue < 0.05)
        e.flag = SignificanceFlag::P05;
    return e;
}

std::vector<std::string> correlation_attributes() {
    std::vector<std::string> names{"D-layer"};
    for (auto m : kMetricNames) names.emplace_back(m);
    return names;
}

CorrelationMatrix correlation_matrix(const MetricsTable& table,
                                     const LayerAssignment& dlayers) {
    if (table.rows.size() != dlayers.dlayerOf.size())
        throw std::invalid_argument("correlation_matrix: class sets differ");
    std::size_t n = table.rows.size();
    if (n < 4) throw std::invalid_argument("correlation_matrix: need n >= 4");

    // column 0 = D-layer, columns 1..8 = metrics; rows in ClassId order
    std::vector<std::vector<double>> cols(9, std::vector<double>());
    for (const auto& [id, v] : table.rows) {
        auto it = dlayers.dlayerOf.find(id);
        if (it == dlayers.dlayerOf.end())
            throw std::invalid_argument("correlation_matrix: missing D-layer for " +
                                        id.name);
        cols[0].push_back(static_cast<double>(it->second));
        for (std::size_t m = 0; m < 8; ++m)
            cols[m + 1].push_back(static_cast<double>(v.at(m)));
    }

    CorrelationMatrix matrix;
    matrix.names = correlation_attributes();
    matrix.n = n;
    matrix.entries.assign(9, std::vector<std::optional<CorrelationEntry>>(9));
    for (std::size_t i = 0; i < 9; ++i) {
        for (std::size_t j = i; j < 9; ++j) {
            if (is_constant(cols[i]) || is_constant(cols[j])) continue;  // undefined
            if (i == j) {
                matrix.entries[i][j] = CorrelationEntry{
                    1.0, n, 0.0, SignificanceFlag::P01};
                continue;
            }
            matrix.entries[i][j] = significance(spearman(cols[i], cols[j]), n);
        }
    }
    return matrix;
}

std::vector<std::string> select_correlated(const CorrelationMatrix& matrix,
                                           double alpha) {
    std::vector<std::string> selected;
    for (std::size_t m = 0; m < 8; ++m) {
        const auto& entry = matrix.at(0, m + 1);
        if (entry && entry->pValue < alpha)
            selected.emplace_back(kMetricNames[m]);
    }
    return selected;
}

}  // namespace archrec
