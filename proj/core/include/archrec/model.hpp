#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace archrec {

/// Fully-qualified class name, dot-separated segments.
struct ClassId {
    std::string name;

    auto operator<=>(const ClassId&) const = default;
};

enum class Visibility { Public, Protected, Package, Private };

std::string_view to_string(Visibility v);
std::optional<Visibility> visibility_from_string(std::string_view s);

enum class ClassKind { Class, Interface };

struct FieldFacts {
    std::string name;
    std::string type;
    Visibility visibility = Visibility::Private;
};

/// Structural facts about one method. Receivers and owners are type
/// identifiers: either an in-model class name or an external type.
struct MethodFacts {
    std::string name;
    std::vector<std::string> paramTypes;
    Visibility visibility = Visibility::Public;
    std::string returnType = "void";
    std::set<std::pair<std::string, std::string>> invoked;         // (receiver, signature)
    std::set<std::pair<std::string, std::string>> accessedFields;  // (owner, field)
    std::set<std::string> referencedTypes;

    std::string signature() const;
};

struct ClassFacts {
    ClassId id;
    ClassKind kind = ClassKind::Class;
    std::optional<std::string> superclass;  // in-model name or external identifier
    std::set<std::string> interfaces;
    std::vector<FieldFacts> fields;
    std::vector<MethodFacts> methods;
};

struct ClassModel {
    std::map<ClassId, ClassFacts> classes;

    bool contains(std::string_view name) const;
    const ClassFacts* find(std::string_view name) const;
};

struct Violation {
    std::string className;
    std::string rule;
    std::string detail;
};

/// Pure structural validation; violations are data, not failures.
std::vector<Violation> validate_model(const ClassModel& model);

/// The eight per-class design metric values.
struct MetricVector {
    long long wmc = 0;
    long long dit = 1;
    long long noc = 0;
    long long cbo = 0;
    long long rfc = 0;
    long long lcom = 0;
    long long ca = 0;
    long long npm = 0;

    bool operator==(const MetricVector&) const = default;

    long long at(std::size_t metricIndex) const;
};

/// Metric column names in canonical listing order; index matches MetricVector::at.
inline constexpr std::array<std::string_view, 8> kMetricNames = {
    "WMC", "DIT", "NOC", "CBO", "RFC", "LCOM", "Ca", "NPM"};

/// Index of a metric name in kMetricNames, or -1.
int metric_index(std::string_view name);

struct MetricsTable {
    std::map<ClassId, MetricVector> rows;
};

/// The four tentative architecture layers, bottom to top.
enum class TentativeLayer : int {
    Infrastructure = 1,
    BusinessLogic = 2,
    Controllers = 3,
    UserInterface = 4,
};

std::string_view layer_name(TentativeLayer layer);
inline int layer_index(TentativeLayer layer) { return static_cast<int>(layer); }
TentativeLayer layer_from_index(int index);  // throws std::out_of_range outside 1..4

}  // namespace archrec
