#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "archrec/model.hpp"

namespace archrec {

/// Shannon entropy (base 2) of a label multiset; empty -> 0.
double entropy(std::span<const int> labels);

struct CutCandidate {
    double cut;
    double gain;
};

/// Best boundary-point cut by class-entropy gain; ties go to the smaller
/// cut value. Returns nullopt when no boundary candidate exists.
std::optional<CutCandidate> best_cut(std::span<const double> values,
                                     std::span<const int> labels);

/// Fayyad-Irani MDL acceptance test for a candidate binary split.
bool mdlp_accept(double gain, std::size_t n, int k, int k1, int k2,
                 double ent, double ent1, double ent2);

/// Recursive binary splitting; returns the sorted set of accepted cuts
/// (possibly empty).
std::vector<double> mdlp_discretize(std::span<const double> values,
                                    std::span<const int> labels);

/// Per-attribute cut points. Bin k covers (cut[k-2], cut[k-1]] with open
/// ends; labels are 1-based. Attributes with no cuts are degenerate.
struct BinningScheme {
    struct Attribute {
        std::string name;
        std::vector<double> cuts;
        bool degenerate() const { return cuts.empty(); }
    };
    std::vector<Attribute> attributes;

    const Attribute* find(const std::string& name) const;
};

/// 1-based bin label for a value under right-closed interval semantics.
int bin_of(double value, const std::vector<double>& cuts);

/// Discretized table plus class labels, rows in ClassId order.
struct NominalDataset {
    std::vector<std::string> attributes;  // e.g. "CBOBin"
    std::vector<int> domainSizes;         // bins per attribute
    std::vector<ClassId> ids;
    std::vector<std::vector<int>> rows;   // 1-based bin labels
    std::vector<int> labels;              // layer index 1..4

    std::size_t size() const { return rows.size(); }
    int attribute_index(const std::string& name) const;  // -1 if absent
};

/// Builds the binning scheme for the given metric attributes against the
/// supervision labels (tentative layer by default, raw D-layer optional).
BinningScheme build_binning_scheme(
    const MetricsTable& table,
    const std::vector<std::string>& metricNames,
    const std::map<ClassId, int>& supervision);

/// Maps every metric value to its bin label; degenerate attributes are
/// excluded from the dataset. Throws when the scheme lacks a requested
/// attribute.
NominalDataset apply_bins(const MetricsTable& table,
                          const std::map<ClassId, TentativeLayer>& layers,
                          const BinningScheme& scheme);

std::string dataset_to_csv(const NominalDataset& data);
NominalDataset dataset_from_csv(std::string_view text);

std::string scheme_to_json(const BinningScheme& scheme);
BinningScheme scheme_from_json(std::string_view text);

}  // namespace archrec
