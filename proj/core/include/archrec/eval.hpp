#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "archrec/model.hpp"
#include "archrec/rules.hpp"

namespace archrec {

struct ConfusionMatrix {
    // counts[actual-1][predicted-1]
    std::array<std::array<long long, 4>, 4> counts{};
    long long n = 0;

    long long row_sum(int layer) const;     // actual instances of layer
    long long column_sum(int layer) const;  // instances predicted as layer
    long long diagonal(int layer) const { return counts[layer - 1][layer - 1]; }
};

struct EvaluationReport {
    std::array<double, 4> precision{};  // index 0 = layer 1
    std::array<double, 4> recall{};
    double accuracy = 0;
    std::string mode = "resubstitution";
    ConfusionMatrix matrix;
};

/// Throws std::invalid_argument on key mismatch.
ConfusionMatrix confusion(const std::map<ClassId, TentativeLayer>& predictions,
                          const std::map<ClassId, TentativeLayer>& truth);

/// precision(L) = diag/column, recall(L) = diag/row; 0/0 reported as 0.
EvaluationReport precision_recall(const ConfusionMatrix& cm,
                                  const std::string& mode = "resubstitution");

/// Trains on the full dataset and scores it on itself.
EvaluationReport resubstitute(const NominalDataset& data,
                              const RipperParams& params = {});

/// Stratified seeded k-fold; classes smaller than k are kept with
/// best-effort stratification. Deterministic for a fixed seed.
EvaluationReport cross_validate(const NominalDataset& data, int k,
                                std::uint64_t seed,
                                const RipperParams& learnerParams = {});

}  // namespace archrec
