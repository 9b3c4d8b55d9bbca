#pragma once

#include <map>
#include <string>

#include "archrec/discretize.hpp"
#include "archrec/eval.hpp"
#include "archrec/layering.hpp"
#include "archrec/model.hpp"
#include "archrec/stats.hpp"

namespace archrec {

enum class DecimalStyle { Dot, Comma };

/// "0.341" in dot style, ",341" (SPSS-style, no leading zero) in comma style.
std::string format_rho(double rho, DecimalStyle style);

std::string format_real(double value, int decimals, DecimalStyle style);

std::string star_suffix(SignificanceFlag flag);

/// Markdown table combining descriptive statistics with the per-attribute
/// bin ranges: one row per attribute (D-layer first), Min/Max/Mean/Std then
/// Bin=k columns rendered as inclusive integer ranges.
std::string render_descriptive_md(const MetricsTable& table,
                                  const LayerAssignment& dlayers,
                                  const BinEdges& dlayerBins,
                                  const BinningScheme& scheme,
                                  DecimalStyle style = DecimalStyle::Dot);

std::string render_correlations_md(const CorrelationMatrix& matrix,
                                   DecimalStyle style = DecimalStyle::Dot);

std::string render_correlations_csv(const CorrelationMatrix& matrix);

/// Accuracy table: one row per layer with precision and recall columns.
std::string render_accuracy_md(const EvaluationReport& report,
                               DecimalStyle style = DecimalStyle::Dot);

std::string render_accuracy_csv(const EvaluationReport& report);

}  // namespace archrec
