#include "archrec/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace archrec {

namespace {

std::string fixed_decimals(double value, int decimals) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(decimals);
    out << value;
    return out.str();
}

std::string trimmed_number(double value) {
    if (value == std::floor(value) && std::abs(value) < 1e15) {
        std::ostringstream out;
        out << static_cast<long long>(value);
        return out.str();
    }
    return fixed_decimals(value, 2);
}

std::string range_cell(long long lo, long long hi) {
    if (lo == hi) return std::to_string(lo);
    return std::to_string(lo) + "-" + std::to_string(hi);
}

}  // namespace

std::string format_real(double value, int decimals, DecimalStyle style) {
    std::string s = fixed_decimals(value, decimals);
    if (style == DecimalStyle::Comma) {
        auto dot = s.find('.');
        if (dot != std::string::npos) s[dot] = ',';
    }
    return s;
}

std::string format_rho(double rho, DecimalStyle style) {
    std::string s = fixed_decimals(rho, 3);
    if (style == DecimalStyle::Comma) {
        auto dot = s.find('.');
        s[dot] = ',';
        // SPSS drops the leading zero of |rho| < 1
        if (s.rfind("0,", 0) == 0)
            s.erase(0, 1);
        else if (s.rfind("-0,", 0) == 0)
            s.erase(1, 1);
    }
    return s;
}

std::string star_suffix(SignificanceFlag flag) {
    switch (flag) {
        case SignificanceFlag::P01: return "**";
        case SignificanceFlag::P05: return "*";
        case SignificanceFlag::None: return "";
    }
    return "";
}

std::string render_descriptive_md(const MetricsTable& table,
                                  const LayerAssignment& dlayers,
                                  const BinEdges& dlayerBins,
                                  const BinningScheme& scheme,
                                  DecimalStyle style) {
    std::size_t maxBins = 4;  // the D-layer row always has four
    for (const auto& attr : scheme.attributes)
        maxBins = std::max(maxBins, attr.cuts.size() + 1);

    std::ostringstream out;
    out << "| | Min | Max | Mean | Std. Deviation |";
    for (std::size_t b = 1; b <= maxBins; ++b) out << " Bin=" << b << " |";
    out << '\n';
    out << "|---|---|---|---|---|";
    for (std::size_t b = 0; b < maxBins; ++b) out << "---|";
    out << '\n';

    auto stats_cells = [&](const std::vector<double>& values) {
        DescriptiveStats s = describe(values);
        std::ostringstream cells;
        cells << ' ' << trimmed_number(s.min) << " | " << trimmed_number(s.max)
              << " | " << format_real(s.mean, 2, style) << " | "
              << format_real(s.stddev, 3, style) << " |";
        return cells.str();
    };

    // D-layer row
    std::vector<double> dvalues;
    for (const auto& [id, d] : dlayers.dlayerOf)
        dvalues.push_back(static_cast<double>(d));
    out << "| D-layer |" << stats_cells(dvalues);
    for (std::size_t b = 0; b < maxBins; ++b) {
        out << ' ';
        if (b < 4) out << range_cell(dlayerBins.bins[b].lo, dlayerBins.bins[b].hi);
        out << " |";
    }
    out << '\n';

    // one row per metric, in canonical order; bins from the scheme when the
    // attribute was discretized (degenerate attributes leave the row empty)
    for (std::size_t m = 0; m < kMetricNames.size(); ++m) {
        std::vector<double> values;
        long long lo = 0, hi = 0;
        bool first = true;
        for (const auto& [id, v] : table.rows) {
            long long x = v.at(m);
            values.push_back(static_cast<double>(x));
            lo = first ? x : std::min(lo, x);
            hi = first ? x : std::max(hi, x);
            first = false;
        }
        out << "| " << kMetricNames[m] << " |" << stats_cells(values);

        const auto* attr = scheme.find(std::string(kMetricNames[m]) + "Bin");
        std::size_t bins = attr && !attr->degenerate() ? attr->cuts.size() + 1 : 0;
        for (std::size_t b = 0; b < maxBins; ++b) {
            out << ' ';
            if (b < bins) {
                long long binLo = b == 0
                                      ? lo
                                      : static_cast<long long>(
                                            std::floor(attr->cuts[b - 1])) + 1;
                long long binHi = b + 1 == bins
                                      ? hi
                                      : static_cast<long long>(
                                            std::floor(attr->cuts[b]));
                out << range_cell(binLo, binHi);
            }
            out << " |";
        }
        out << '\n';
    }
    return out.str();
}

std::string render_correlations_md(const CorrelationMatrix& matrix,
                                   DecimalStyle style) {
    std::ostringstream out;
    out << "| |";
    for (const auto& name : matrix.names) out << ' ' << name << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < matrix.names.size(); ++i) out << "---|";
    out << '\n';
    for (std::size_t i = 0; i < matrix.names.size(); ++i) {
        out << "| " << matrix.names[i] << " |";
        for (std::size_t j = 0; j < matrix.names.size(); ++j) {
            out << ' ';
            if (j >= i) {
                const auto& entry = matrix.at(i, j);
                if (entry)
                    out << format_rho(entry->rho, style) << star_suffix(entry->flag);
                else
                    out << "undefined";
            }
            out << " |";
        }
        out << '\n';
    }
    return out.str();
}

std::string render_correlations_csv(const CorrelationMatrix& matrix) {
    std::ostringstream out;
    out << "attribute";
    for (const auto& name : matrix.names) out << ',' << name;
    out << '\n';
    for (std::size_t i = 0; i < matrix.names.size(); ++i) {
        out << matrix.names[i];
        for (std::size_t j = 0; j < matrix.names.size(); ++j) {
            out << ',';
            if (j >= i) {
                const auto& entry = matrix.at(i, j);
                if (entry)
                    out << format_rho(entry->rho, DecimalStyle::Dot)
                        << star_suffix(entry->flag);
                else
                    out << "undefined";
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string render_accuracy_md(const EvaluationReport& report, DecimalStyle style) {
    std::ostringstream out;
    out << "| | Precision | Recall |\n|---|---|---|\n";
    for (int layer = 1; layer <= 4; ++layer) {
        out << "| D-layer=" << layer << " | "
            << format_real(report.precision[layer - 1], 3, style) << " | "
            << format_real(report.recall[layer - 1], 3, style) << " |\n";
    }
    out << "\nmode: " << report.mode
        << ", accuracy: " << format_real(report.accuracy, 3, style) << '\n';
    return out.str();
}

std::string render_accuracy_csv(const EvaluationReport& report) {
    std::ostringstream out;
    out << "layer,precision,recall\n";
    for (int layer = 1; layer <= 4; ++layer)
        out << layer << ',' << format_real(report.precision[layer - 1], 6, DecimalStyle::Dot)
            << ',' << format_real(report.recall[layer - 1], 6, DecimalStyle::Dot) << '\n';
    out << "accuracy," << format_real(report.accuracy, 6, DecimalStyle::Dot) << ','
        << report.mode << '\n';
    return out.str();
}

}  // namespace archrec
