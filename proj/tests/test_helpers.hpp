#pragma once

#include <string>
#include <vector>

#include "archrec/discretize.hpp"
#include "archrec/model.hpp"

namespace testutil {

// Nominal dataset from explicit rows; ids are generated as c000, c001, ...
inline archrec::NominalDataset make_dataset(std::vector<std::string> attributes,
                                            std::vector<int> domainSizes,
                                            std::vector<std::vector<int>> rows,
                                            std::vector<int> labels) {
    archrec::NominalDataset data;
    data.attributes = std::move(attributes);
    data.domainSizes = std::move(domainSizes);
    data.rows = std::move(rows);
    data.labels = std::move(labels);
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        char name[16];
        std::snprintf(name, sizeof name, "c%03zu", i);
        data.ids.push_back(archrec::ClassId{name});
    }
    return data;
}

inline archrec::MethodFacts method(std::string name,
                                   archrec::Visibility vis = archrec::Visibility::Public) {
    archrec::MethodFacts m;
    m.name = std::move(name);
    m.visibility = vis;
    return m;
}

}  // namespace testutil
