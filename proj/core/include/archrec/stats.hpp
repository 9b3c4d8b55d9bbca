#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "archrec/layering.hpp"
#include "archrec/model.hpp"

namespace archrec {

struct DescriptiveStats {
    double min = 0;
    double max = 0;
    double mean = 0;
    double stddev = 0;  // sample (n-1)
};

enum class SignificanceFlag { None, P05, P01 };

struct CorrelationEntry {
    double rho = 0;
    std::size_t n = 0;
    double pValue = 1.0;
    SignificanceFlag flag = SignificanceFlag::None;
};

/// Attribute columns of the correlation matrix: D-layer first, then the
/// eight metrics in canonical listing order.
std::vector<std::string> correlation_attributes();

/// Upper-triangular matrix; entry(i,j) for i<=j. Constant columns yield
/// nullopt entries (undefined correlation) rather than fabricated values.
struct CorrelationMatrix {
    std::vector<std::string> names;
    std::size_t n = 0;
    std::vector<std::vector<std::optional<CorrelationEntry>>> entries;

    const std::optional<CorrelationEntry>& at(std::size_t i, std::size_t j) const {
        return entries[i][j];
    }
};

DescriptiveStats describe(std::span<const double> values);  // throws on empty

/// Pearson correlation of average ranks; ties get the mean of the ranks they
/// span. Throws std::invalid_argument on length mismatch, n < 3 or a
/// constant vector.
double spearman(std::span<const double> x, std::span<const double> y);

/// Two-tailed p from the t transform against Student-t with n-2 dof.
/// |rho| = 1 maps to p = 0.
CorrelationEntry significance(double rho, std::size_t n);

CorrelationMatrix correlation_matrix(const MetricsTable& table,
                                     const LayerAssignment& dlayers);

/// Metric names whose D-layer correlation has p < alpha, in canonical metric
/// order. Undefined entries are never selected.
std::vector<std::string> select_correlated(const CorrelationMatrix& matrix,
                                           double alpha = 0.05);

}  // namespace archrec
