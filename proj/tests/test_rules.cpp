#include <doctest.h>

#include <cmath>
#include <random>

#include "archrec/rules.hpp"
#include "test_helpers.hpp"

using namespace archrec;
using testutil::make_dataset;

namespace {

std::vector<std::size_t> all_rows(const NominalDataset& data) {
    std::vector<std::size_t> rows(data.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    return rows;
}

}  // namespace

TEST_CASE("foil_gain: clean separation, dead condition, no-op condition") {
    // 10 positives with A=1, 10 negatives with A=2; B is constant
    std::vector<std::vector<int>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 10; ++i) {
        rows.push_back({1, 1});
        labels.push_back(1);
    }
    for (int i = 0; i < 10; ++i) {
        rows.push_back({2, 1});
        labels.push_back(2);
    }
    NominalDataset data = make_dataset({"ABin", "BBin"}, {2, 1}, rows, labels);
    Rule empty;

    // p0=10,n0=10 -> p1=5,n1=0 would be 5 bits; here A=1 keeps all 10 positives
    CHECK(foil_gain(data, all_rows(data), 1, empty, {"ABin", 1}) ==
          doctest::Approx(10.0));
    CHECK(std::isinf(foil_gain(data, all_rows(data), 1, empty, {"ABin", 2})));
    CHECK(foil_gain(data, all_rows(data), 1, empty, {"BBin", 1}) ==
          doctest::Approx(0.0));

    // exact 5-bit case: restrict to rows where half the positives survive A=1
    std::vector<std::vector<int>> half;
    std::vector<int> halfLabels;
    for (int i = 0; i < 5; ++i) half.push_back({1, 1}), halfLabels.push_back(1);
    for (int i = 0; i < 5; ++i) half.push_back({2, 1}), halfLabels.push_back(1);
    for (int i = 0; i < 10; ++i) half.push_back({2, 2}), halfLabels.push_back(2);
    NominalDataset halfData = make_dataset({"ABin", "BBin"}, {2, 2}, half, halfLabels);
    CHECK(foil_gain(halfData, all_rows(halfData), 1, empty, {"ABin", 1}) ==
          doctest::Approx(5.0));
}

TEST_CASE("grow_rule recovers planted conditions") {
    // target <=> A=1
    std::vector<std::vector<int>> rows;
    std::vector<int> labels;
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 3; ++b)
            for (int rep = 0; rep < 3; ++rep) {
                rows.push_back({a, b});
                labels.push_back(a == 1 ? 1 : 2);
            }
    NominalDataset data = make_dataset({"ABin", "BBin"}, {2, 3}, rows, labels);
    Rule r = grow_rule(data, all_rows(data), 1);
    CHECK(r.conditions == std::vector<Condition>{{"ABin", 1}});

    // target <=> A=1 and B=2
    std::vector<std::vector<int>> rows2;
    std::vector<int> labels2;
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 3; ++b)
            for (int rep = 0; rep < 4; ++rep) {
                rows2.push_back({a, b});
                labels2.push_back(a == 1 && b == 2 ? 1 : 2);
            }
    NominalDataset conj = make_dataset({"ABin", "BBin"}, {2, 3}, rows2, labels2);
    Rule r2 = grow_rule(conj, all_rows(conj), 1);
    REQUIRE(r2.conditions.size() == 2);
    bool hasA = false, hasB = false;
    for (const auto& c : r2.conditions) {
        hasA |= c == Condition{"ABin", 1};
        hasB |= c == Condition{"BBin", 2};
    }
    CHECK(hasA);
    CHECK(hasB);
    for (std::size_t i = 0; i < conj.size(); ++i)
        if (rule_matches(r2, conj, i)) CHECK(conj.labels[i] == 1);

    // all-target input grows the empty rule
    NominalDataset allPos = make_dataset({"ABin"}, {2}, {{1}, {2}, {1}}, {1, 1, 1});
    CHECK(grow_rule(allPos, all_rows(allPos), 1).conditions.empty());
}

TEST_CASE("prune_rule keeps, truncates or empties by worth") {
    NominalDataset agree = make_dataset({"ABin", "BBin"}, {2, 2},
                                        {{1, 1}, {1, 2}, {2, 1}, {2, 2}},
                                        {1, 2, 2, 2});
    Rule planted{{{"ABin", 1}, {"BBin", 1}}, 1};
    CHECK(prune_rule(agree, all_rows(agree), 1, planted) == planted);

    // second condition only throws away prune-set positives
    NominalDataset hurts = make_dataset({"ABin", "BBin"}, {2, 2},
                                        {{1, 2}, {1, 2}, {2, 1}, {2, 2}},
                                        {1, 1, 2, 2});
    Rule pruned = prune_rule(hurts, all_rows(hurts), 1, planted);
    CHECK(pruned.conditions == std::vector<Condition>{{"ABin", 1}});

    // even the first condition hurts: all positives have A=2
    NominalDataset inverted = make_dataset({"ABin", "BBin"}, {2, 2},
                                           {{2, 1}, {2, 1}, {2, 1}, {1, 1}},
                                           {1, 1, 1, 2});
    CHECK(prune_rule(inverted, all_rows(inverted), 1, planted).conditions.empty());
}

TEST_CASE("description length: empty theory, useful rule, vacuous rule") {
    std::vector<std::vector<int>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 20; ++i) {
        rows.push_back({i < 10 ? 1 : 2});
        labels.push_back(i < 10 ? 1 : 2);
    }
    NominalDataset data = make_dataset({"ABin"}, {2}, rows, labels);

    double emptyDl = ruleset_description_length(data, all_rows(data), 1, {});
    // no rules: theory 0, exceptions encode the 10 uncovered positives
    CHECK(emptyDl > 0.0);

    Rule good{{{"ABin", 1}}, 1};
    double goodDl = ruleset_description_length(data, all_rows(data), 1, {good});
    CHECK(goodDl < emptyDl);

    Rule vacuous{{{"ABin", 2}, }, 1};  // covers only negatives
    double vacuousDl =
        ruleset_description_length(data, all_rows(data), 1, {good, vacuous});
    CHECK(vacuousDl > goodDl);
}

TEST_CASE("learn_ripper: planted 50/50 rule comes back exactly") {
    std::vector<std::vector<int>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 100; ++i) {
        int bin = i < 50 ? 1 : 2;
        rows.push_back({bin});
        labels.push_back(bin);  // L1 <=> CBOBin=1, frequency tie
    }
    NominalDataset data = make_dataset({"CBOBin"}, {2}, rows, labels);
    RuleSet rs = learn_ripper(data);
    REQUIRE(rs.rules.size() == 1);
    CHECK(rs.rules[0] == Rule{{{"CBOBin", 1}}, 1});
    CHECK(rs.defaultLayer == 2);
    CHECK(format_rules(rs) ==
          "1. IF (CBOBin = 1) THEN layerBin=1\n"
          "2. ELSE layerBin=2\n");
}

TEST_CASE("learn_ripper: single-class dataset is default-only") {
    NominalDataset data =
        make_dataset({"ABin"}, {2}, {{1}, {2}, {1}, {2}}, {3, 3, 3, 3});
    RuleSet rs = learn_ripper(data);
    CHECK(rs.rules.empty());
    CHECK(rs.defaultLayer == 3);
    CHECK(format_rules(rs) == "1. ELSE layerBin=3\n");
}

TEST_CASE("learn_ripper is deterministic and noise-free-exact on conjunctions") {
    std::mt19937_64 rng(13);
    std::vector<std::vector<int>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 300; ++i) {
        int a = 1 + static_cast<int>(rng() % 3);
        int b = 1 + static_cast<int>(rng() % 3);
        int c = 1 + static_cast<int>(rng() % 2);
        rows.push_back({a, b, c});
        int label = 4;
        if (a == 1 && b == 2) label = 1;
        else if (a == 3) label = 2;
        labels.push_back(label);
    }
    NominalDataset data = make_dataset({"ABin", "BBin", "CBin"}, {3, 3, 2}, rows, labels);

    RuleSet first = learn_ripper(data);
    RuleSet second = learn_ripper(data);
    CHECK(format_rules(first) == format_rules(second));

    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i)
        if (predict(first, data, i) == data.labels[i]) ++correct;
    CHECK(correct == data.size());  // noise-free planted structure
    CHECK(first.rules.size() <= 3);  // two planted rules + slack
}

TEST_CASE("predict: first match wins, default covers the rest") {
    RuleSet rs;
    rs.rules.push_back({{{"ABin", 1}}, 2});
    rs.rules.push_back({{{"ABin", 1}, {"BBin", 1}}, 3});  // shadowed by rule 1
    rs.defaultLayer = 4;

    CHECK(predict(rs, {{"ABin", 1}, {"BBin", 1}}) == 2);
    CHECK(predict(rs, {{"ABin", 2}, {"BBin", 1}}) == 4);
    CHECK(predict(rs, {{"BBin", 1}}) == 4);  // missing attribute fails the test
}

TEST_CASE("externally authored ruleset text parses and fires its first rule") {
    const char* text =
        "1. IF (DITBin = 2) and (CBOBin = 3)THEN layerBin=2\n"
        "2. IF (DITBin = 2) and (NPMBin = 2) THEN layerBin=2\n"
        "3. IF (RFCBin = 4) THEN layerBin=2\n"
        "4. IF (CBOBin = 4) and (NPMBin = 5) and (WMCBin = 5) and (CaBin = 1) THEN layerBin=3\n"
        "5. ELSE layerBin=1\n";
    RuleSet rs = parse_rules(text);
    REQUIRE(rs.rules.size() == 4);
    CHECK(rs.defaultLayer == 1);
    CHECK(rs.rules[3].conditions.size() == 4);

    CHECK(predict(rs, {{"DITBin", 2}, {"CBOBin", 3}, {"RFCBin", 1}}) == 2);
    CHECK(predict(rs, {{"DITBin", 1}, {"CBOBin", 1}, {"RFCBin", 1}}) == 1);
    CHECK(predict(rs, {{"RFCBin", 4}}) == 2);
}

TEST_CASE("format/parse round-trip across random rulesets") {
    std::mt19937_64 rng(17);
    const char* attrs[] = {"WMCBin", "DITBin", "NOCBin", "CBOBin"};
    for (int trial = 0; trial < 100; ++trial) {
        RuleSet rs;
        int nRules = static_cast<int>(rng() % 5);
        for (int r = 0; r < nRules; ++r) {
            Rule rule;
            int nConds = static_cast<int>(rng() % 4);
            for (int c = 0; c < nConds; ++c)
                rule.conditions.push_back(
                    {attrs[rng() % 4], 1 + static_cast<int>(rng() % 6)});
            rule.layer = 1 + static_cast<int>(rng() % 4);
            rs.rules.push_back(rule);
        }
        rs.defaultLayer = 1 + static_cast<int>(rng() % 4);

        RuleSet back = parse_rules(format_rules(rs));
        REQUIRE(back.rules.size() == rs.rules.size());
        CHECK(back.defaultLayer == rs.defaultLayer);
        for (int probe = 0; probe < 20; ++probe) {
            std::map<std::string, int> row;
            for (const char* a : attrs) row[a] = 1 + static_cast<int>(rng() % 6);
            CHECK(predict(back, row) == predict(rs, row));
        }
    }
}

TEST_CASE("parse_rules rejects malformed input") {
    CHECK_THROWS(parse_rules(""));
    CHECK_THROWS(parse_rules("1. IF (ABin = 1) THEN layerBin=1\n"));  // no ELSE
    CHECK_THROWS(parse_rules("1. ELSE layerBin=1\n2. IF (ABin = 1) THEN layerBin=2\n"));
    CHECK_THROWS(parse_rules("1. WHEN (ABin = 1) THEN layerBin=1\n2. ELSE layerBin=2\n"));
}

TEST_CASE("rules_to_json carries every rule and the default") {
    RuleSet rs;
    rs.rules.push_back({{{"CBOBin", 1}}, 1});
    rs.defaultLayer = 2;
    std::string json = rules_to_json(rs);
    CHECK(json.find("CBOBin") != std::string::npos);
    CHECK(json.find("\"default\"") != std::string::npos);
}
