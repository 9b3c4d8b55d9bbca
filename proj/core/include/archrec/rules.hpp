#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "archrec/discretize.hpp"
#include "archrec/model.hpp"

namespace archrec {

/// Equality test on one binned attribute.
struct Condition {
    std::string attribute;
    int bin = 0;

    bool operator==(const Condition&) const = default;
};

struct Rule {
    std::vector<Condition> conditions;  // conjunction
    int layer = 1;                      // consequent, 1..4

    bool operator==(const Rule&) const = default;
};

/// Ordered rules with first-match semantics and a default class.
struct RuleSet {
    std::vector<Rule> rules;
    int defaultLayer = 1;
};

struct RipperParams {
    std::uint64_t seed = 1;
    double growFraction = 2.0 / 3.0;
    int optPasses = 2;
};

/// FOIL information gain of adding `candidate` to `rule`, measured on the
/// given rows of the dataset with `target` as the positive class. Covering
/// no positives yields -infinity.
double foil_gain(const NominalDataset& data, const std::vector<std::size_t>& rows,
                 int target, const Rule& rule, const Condition& candidate);

/// Greedy conjunction growth until no negatives are covered or no condition
/// has positive gain. Ties break by attribute order, then bin label.
Rule grow_rule(const NominalDataset& data, const std::vector<std::size_t>& growRows,
               int target);

/// Keeps the truncation of the condition list maximizing (p-n)/(p+n) on the
/// prune rows; ties favor shorter rules. Empty coverage scores -1.
Rule prune_rule(const NominalDataset& data, const std::vector<std::size_t>& pruneRows,
                int target, Rule rule);

/// MDL cost in bits of a ruleset for the binary problem (target vs rest)
/// over the given rows: theory bits plus exception bits.
double ruleset_description_length(const NominalDataset& data,
                                  const std::vector<std::size_t>& rows, int target,
                                  const std::vector<Rule>& rules);

/// Ordered multiclass RIPPER: classes learned in increasing-frequency
/// order, the most frequent becomes the default. Deterministic for a fixed
/// seed. A single-class dataset yields a default-only ruleset.
RuleSet learn_ripper(const NominalDataset& data, const RipperParams& params = {});

bool rule_matches(const Rule& rule, const NominalDataset& data, std::size_t row);

int predict(const RuleSet& rs, const NominalDataset& data, std::size_t row);

/// Missing attributes fail the condition.
int predict(const RuleSet& rs, const std::map<std::string, int>& row);

/// "N. IF (AttrBin = v) and ... THEN layerBin=c" lines plus a final
/// "N. ELSE layerBin=d". Round-trips through parse_rules.
std::string format_rules(const RuleSet& rs);

RuleSet parse_rules(std::string_view text);  // throws std::runtime_error

/// Structured export, one rule per record.
std::string rules_to_json(const RuleSet& rs);

}  // namespace archrec
