#include "archrec/rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace archrec {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log2_choose(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    return (std::lgamma(static_cast<double>(n) + 1.0) -
            std::lgamma(static_cast<double>(k) + 1.0) -
            std::lgamma(static_cast<double>(n - k) + 1.0)) /
           std::log(2.0);
}

// Deterministic Fisher-Yates; std::shuffle's draw sequence is
// implementation-defined, which would break cross-platform reproducibility.
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng() % i]);
}

struct Coverage {
    std::size_t pos = 0;
    std::size_t neg = 0;
    std::size_t total() const { return pos + neg; }
};

Coverage coverage(const NominalDataset& data, const std::vector<std::size_t>& rows,
                  int target, const Rule& rule) {
    Coverage c;
    for (std::size_t r : rows) {
        if (!rule_matches(rule, data, r)) continue;
        if (data.labels[r] == target)
            ++c.pos;
        else
            ++c.neg;
    }
    return c;
}

std::vector<std::size_t> covered_rows(const NominalDataset& data,
                                      const std::vector<std::size_t>& rows,
                                      const Rule& rule) {
    std::vector<std::size_t> covered;
    for (std::size_t r : rows)
        if (rule_matches(rule, data, r)) covered.push_back(r);
    return covered;
}

}  // namespace

bool rule_matches(const Rule& rule, const NominalDataset& data, std::size_t row) {
    for (const auto& cond : rule.conditions) {
        int a = data.attribute_index(cond.attribute);
        if (a < 0) return false;
        if (data.rows[row][static_cast<std::size_t>(a)] != cond.bin) return false;
    }
    return true;
}

double foil_gain(const NominalDataset& data, const std::vector<std::size_t>& rows,
                 int target, const Rule& rule, const Condition& candidate) {
    Coverage before = coverage(data, rows, target, rule);
    Rule extended = rule;
    extended.conditions.push_back(candidate);
    Coverage after = coverage(data, rows, target, extended);
    if (after.pos == 0 || before.pos == 0) return kNegInf;
    double p1 = static_cast<double>(after.pos);
    double precAfter = p1 / static_cast<double>(after.total());
    double precBefore =
        static_cast<double>(before.pos) / static_cast<double>(before.total());
    return p1 * (std::log2(precAfter) - std::log2(precBefore));
}

namespace {

// Greedy growth starting from an arbitrary seed rule; used by both plain
// growing and the revision step of optimization.
Rule grow_from(Rule rule, const NominalDataset& data,
               const std::vector<std::size_t>& growRows, int target) {
    std::vector<std::size_t> covered = covered_rows(data, growRows, rule);
    while (true) {
        Coverage before = coverage(data, covered, target, Rule{{}, rule.layer});
        if (before.neg == 0 || before.pos == 0) break;

        double bestGain = 0.0;
        std::optional<Condition> bestCond;
        for (std::size_t a = 0; a < data.attributes.size(); ++a) {
            bool used = std::any_of(rule.conditions.begin(), rule.conditions.end(),
                                    [&](const Condition& c) {
                                        return c.attribute == data.attributes[a];
                                    });
            if (used) continue;
            for (int bin = 1; bin <= data.domainSizes[a]; ++bin) {
                Condition cand{data.attributes[a], bin};
                // Gain over the already-covered rows equals the global gain:
                // conjunctive conditions only shrink coverage.
                double gain = foil_gain(data, covered, target, Rule{{}, rule.layer}, cand);
                if (gain > bestGain) {
                    bestGain = gain;
                    bestCond = cand;
                }
            }
        }
        if (!bestCond) break;
        rule.conditions.push_back(*bestCond);
        Rule single{{*bestCond}, rule.layer};
        covered = covered_rows(data, covered, single);
    }
    return rule;
}

}  // namespace

Rule grow_rule(const NominalDataset& data, const std::vector<std::size_t>& growRows,
               int target) {
    return grow_from(Rule{{}, target}, data, growRows, target);
}

Rule prune_rule(const NominalDataset& data, const std::vector<std::size_t>& pruneRows,
                int target, Rule rule) {
    auto worth_of = [&](std::size_t len) {
        Rule truncated{{rule.conditions.begin(),
                        rule.conditions.begin() + static_cast<std::ptrdiff_t>(len)},
                       rule.layer};
        Coverage c = coverage(data, pruneRows, target, truncated);
        if (c.total() == 0) return -1.0;
        return (static_cast<double>(c.pos) - static_cast<double>(c.neg)) /
               static_cast<double>(c.total());
    };
    std::size_t bestLen = 0;
    double bestWorth = worth_of(0);
    for (std::size_t len = 1; len <= rule.conditions.size(); ++len) {
        double w = worth_of(len);
        if (w > bestWorth) {
            bestWorth = w;
            bestLen = len;
        }
    }
    rule.conditions.resize(bestLen);
    return rule;
}

double ruleset_description_length(const NominalDataset& data,
                                  const std::vector<std::size_t>& rows, int target,
                                  const std::vector<Rule>& rules) {
    std::size_t conditionPool = 0;
    for (int d : data.domainSizes) conditionPool += static_cast<std::size_t>(d);

    double theory = 0.0;
    for (const auto& rule : rules) {
        std::size_t k = rule.conditions.size();
        theory += 0.5 * (std::log2(static_cast<double>(k) + 1.0) +
                         log2_choose(conditionPool, k));
    }

    std::size_t cov = 0, fp = 0, fn = 0;
    for (std::size_t r : rows) {
        bool matched = std::any_of(rules.begin(), rules.end(), [&](const Rule& rule) {
            return rule_matches(rule, data, r);
        });
        if (matched) {
            ++cov;
            if (data.labels[r] != target) ++fp;
        } else if (data.labels[r] == target) {
            ++fn;
        }
    }
    std::size_t uncov = rows.size() - cov;
    double exceptions = log2_choose(cov, fp) + log2_choose(uncov, fn) +
                        std::log2(static_cast<double>(cov) + 1.0) +
                        std::log2(static_cast<double>(uncov) + 1.0);
    return theory + exceptions;
}

namespace {

// Stratified grow/prune split over a canonical row ordering.
void split_grow_prune(const NominalDataset& data, const std::vector<std::size_t>& rows,
                      double growFraction, std::mt19937_64& rng,
                      std::vector<std::size_t>& grow, std::vector<std::size_t>& prune) {
    grow.clear();
    prune.clear();
    std::map<int, std::vector<std::size_t>> byLabel;
    for (std::size_t r : rows) byLabel[data.labels[r]].push_back(r);
    for (auto& [label, members] : byLabel) {
        seeded_shuffle(members, rng);
        std::size_t take = static_cast<std::size_t>(
            std::ceil(growFraction * static_cast<double>(members.size())));
        take = std::min(take, members.size());
        for (std::size_t i = 0; i < members.size(); ++i)
            (i < take ? grow : prune).push_back(members[i]);
    }
    std::sort(grow.begin(), grow.end());
    std::sort(prune.begin(), prune.end());
}

std::vector<std::size_t> canonical_order(const NominalDataset& data) {
    std::vector<std::size_t> order(data.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return data.ids[a] < data.ids[b];
    });
    return order;
}

std::vector<std::size_t> remove_covered(const NominalDataset& data,
                                        const std::vector<std::size_t>& rows,
                                        const Rule& rule) {
    std::vector<std::size_t> rest;
    for (std::size_t r : rows)
        if (!rule_matches(rule, data, r)) rest.push_back(r);
    return rest;
}

std::vector<std::size_t> rows_not_covered_by(const NominalDataset& data,
                                             const std::vector<std::size_t>& rows,
                                             const std::vector<Rule>& rules) {
    std::vector<std::size_t> rest;
    for (std::size_t r : rows) {
        bool matched = std::any_of(rules.begin(), rules.end(), [&](const Rule& rule) {
            return rule_matches(rule, data, r);
        });
        if (!matched) rest.push_back(r);
    }
    return rest;
}

std::vector<Rule> learn_class_rules(const NominalDataset& data,
                                    const std::vector<std::size_t>& classData,
                                    int target, const RipperParams& params,
                                    std::mt19937_64& rng) {
    std::vector<Rule> rules;
    double minDL = ruleset_description_length(data, classData, target, rules);
    std::vector<std::size_t> working = classData;

    while (true) {
        bool positivesLeft = std::any_of(
            working.begin(), working.end(),
            [&](std::size_t r) { return data.labels[r] == target; });
        if (!positivesLeft) break;

        std::vector<std::size_t> grow, prune;
        split_grow_prune(data, working, params.growFraction, rng, grow, prune);
        bool growHasPositive = std::any_of(
            grow.begin(), grow.end(),
            [&](std::size_t r) { return data.labels[r] == target; });
        if (!growHasPositive) break;

        Rule rule = grow_rule(data, grow, target);
        if (!prune.empty()) {
            rule = prune_rule(data, prune, target, rule);
            Coverage pc = coverage(data, prune, target, rule);
            if (pc.total() > 0 &&
                static_cast<double>(pc.neg) / static_cast<double>(pc.total()) > 0.5)
                break;
        }
        Coverage wc = coverage(data, working, target, rule);
        if (wc.total() == 0) break;  // vacuous rule, no progress possible

        auto candidate = rules;
        candidate.push_back(rule);
        double dl = ruleset_description_length(data, classData, target, candidate);
        if (dl > minDL + 64.0) break;
        minDL = std::min(minDL, dl);
        rules = std::move(candidate);
        working = remove_covered(data, working, rule);
    }

    // Optimization: re-grow each rule as replacement and revision, keep the
    // minimum-DL variant of the whole list.
    for (int pass = 0; pass < params.optPasses; ++pass) {
        for (std::size_t i = 0; i < rules.size(); ++i) {
            std::vector<Rule> before(rules.begin(),
                                     rules.begin() + static_cast<std::ptrdiff_t>(i));
            std::vector<std::size_t> context =
                rows_not_covered_by(data, classData, before);
            std::vector<std::size_t> grow, prune;
            split_grow_prune(data, context, params.growFraction, rng, grow, prune);
            bool growHasPositive = std::any_of(
                grow.begin(), grow.end(),
                [&](std::size_t r) { return data.labels[r] == target; });
            if (!growHasPositive) continue;

            Rule replacement = grow_rule(data, grow, target);
            Rule revision = grow_from(rules[i], data, grow, target);
            if (!prune.empty()) {
                replacement = prune_rule(data, prune, target, replacement);
                revision = prune_rule(data, prune, target, revision);
            }

            double bestDL =
                ruleset_description_length(data, classData, target, rules);
            for (const Rule& variant : {replacement, revision}) {
                auto trial = rules;
                trial[i] = variant;
                double dl = ruleset_description_length(data, classData, target, trial);
                if (dl < bestDL) {
                    bestDL = dl;
                    rules[i] = variant;
                }
            }
        }
    }

    // Every surviving rule must cover at least one training instance;
    // optimization can also leave behind exact duplicates.
    std::vector<Rule> kept;
    for (const auto& rule : rules) {
        if (coverage(data, classData, target, rule).total() == 0) continue;
        if (std::find(kept.begin(), kept.end(), rule) != kept.end()) continue;
        kept.push_back(rule);
    }
    return kept;
}

}  // namespace

RuleSet learn_ripper(const NominalDataset& data, const RipperParams& params) {
    if (data.size() == 0) throw std::invalid_argument("learn_ripper: empty dataset");

    std::map<int, std::size_t> freq;
    for (int label : data.labels) ++freq[label];

    // increasing frequency; ties by ascending layer index
    std::vector<int> order;
    for (const auto& [label, count] : freq) order.push_back(label);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return freq[a] < freq[b]; });

    RuleSet rs;
    rs.defaultLayer = order.back();
    if (order.size() == 1) return rs;

    std::mt19937_64 rng(params.seed);
    std::vector<std::size_t> remaining = canonical_order(data);
    for (std::size_t c = 0; c + 1 < order.size(); ++c) {
        int target = order[c];
        auto classRules = learn_class_rules(data, remaining, target, params, rng);
        for (const auto& rule : classRules) rs.rules.push_back(rule);
        remaining = rows_not_covered_by(data, remaining, classRules);
    }
    return rs;
}

int predict(const RuleSet& rs, const NominalDataset& data, std::size_t row) {
    for (const auto& rule : rs.rules)
        if (rule_matches(rule, data, row)) return rule.layer;
    return rs.defaultLayer;
}

int predict(const RuleSet& rs, const std::map<std::string, int>& row) {
    for (const auto& rule : rs.rules) {
        bool matched = std::all_of(
            rule.conditions.begin(), rule.conditions.end(), [&](const Condition& c) {
                auto it = row.find(c.attribute);
                return it != row.end() && it->second == c.bin;
            });
        if (matched) return rule.layer;
    }
    return rs.defaultLayer;
}

std::string format_rules(const RuleSet& rs) {
    std::ostringstream out;
    std::size_t n = 1;
    for (const auto& rule : rs.rules) {
        out << n++ << ". IF ";
        for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
            if (i > 0) out << " and ";
            out << '(' << rule.conditions[i].attribute << " = "
                << rule.conditions[i].bin << ')';
        }
        if (rule.conditions.empty()) out << "()";
        out << " THEN layerBin=" << rule.layer << '\n';
    }
    out << n << ". ELSE layerBin=" << rs.defaultLayer << '\n';
    return out.str();
}

RuleSet parse_rules(std::string_view text) {
    static const std::regex ifLine(
        R"(^\s*\d+\.\s*IF\s*(.*?)\s*THEN\s*layerBin\s*=\s*(\d)\s*$)");
    static const std::regex elseLine(R"(^\s*\d+\.\s*ELSE\s*layerBin\s*=\s*(\d)\s*$)");
    static const std::regex condition(R"(\(\s*([A-Za-z0-9_.$-]+)\s*=\s*(\d+)\s*\))");

    RuleSet rs;
    bool sawDefault = false;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::smatch m;
        if (std::regex_match(line, m, elseLine)) {
            rs.defaultLayer = std::stoi(m[1]);
            sawDefault = true;
            continue;
        }
        if (!std::regex_match(line, m, ifLine))
            throw std::runtime_error("rule text: malformed line " +
                                     std::to_string(lineNo));
        if (sawDefault)
            throw std::runtime_error("rule text: rule after ELSE at line " +
                                     std::to_string(lineNo));
        Rule rule;
        rule.layer = std::stoi(m[2]);
        std::string conds = m[1];
        auto begin = std::sregex_iterator(conds.begin(), conds.end(), condition);
        for (auto it = begin; it != std::sregex_iterator(); ++it)
            rule.conditions.push_back({(*it)[1], std::stoi((*it)[2])});
        rs.rules.push_back(std::move(rule));
    }
    if (!sawDefault) throw std::runtime_error("rule text: missing ELSE line");
    return rs;
}

std::string rules_to_json(const RuleSet& rs) {
    nlohmann::json doc;
    doc["rules"] = nlohmann::json::array();
    for (const auto& rule : rs.rules) {
        nlohmann::json conds = nlohmann::json::array();
        for (const auto& c : rule.conditions)
            conds.push_back({{"attribute", c.attribute}, {"bin", c.bin}});
        doc["rules"].push_back({{"conditions", conds}, {"layer", rule.layer}});
    }
    doc["default"] = rs.defaultLayer;
    return doc.dump(2) + "\n";
}

}  // namespace archrec
