#pragma once

#include <set>
#include <string>

#include "archrec/model.hpp"

namespace archrec {

struct MetricsOptions {
    bool constructorsCount = true;    // methods named "<init>"
    bool initializersCount = false;   // methods named "<clinit>"
};

/// True when the method participates in declared-method counts (WMC, NPM,
/// RFC, LCOM pairing) under the given options.
bool counts_as_method(const MethodFacts& m, const MetricsOptions& opts);

/// Distinct type identifiers referenced by c, excluding c itself, primitives
/// and void. Superclass, interfaces, field types, method parameter/return
/// types, invoked receivers, accessed-field owners and referencedTypes all
/// contribute. External identifiers are kept.
std::set<std::string> reference_set(const ClassFacts& c);

bool is_primitive_or_void(std::string_view type);

long long wmc(const ClassFacts& c, const MetricsOptions& opts = {});
long long dit(const ClassFacts& c, const ClassModel& model);
long long noc(const ClassFacts& c, const ClassModel& model);
long long cbo(const ClassFacts& c);
long long rfc(const ClassFacts& c, const MetricsOptions& opts = {});
long long lcom(const ClassFacts& c, const MetricsOptions& opts = {});
long long ca(const ClassFacts& c, const ClassModel& model);
long long npm(const ClassFacts& c, const MetricsOptions& opts = {});

MetricsTable compute_metrics(const ClassModel& model, const MetricsOptions& opts = {});

}  // namespace archrec
