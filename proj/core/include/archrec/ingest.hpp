#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "archrec/model.hpp"

namespace archrec {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct EdgeList {
    std::set<std::pair<ClassId, ClassId>> edges;
    std::size_t selfEdgesDropped = 0;
};

/// Parses the class-facts document format (see README for the grammar).
/// Throws ParseError on syntax or schema violations, including duplicate
/// class ids. The returned model passes validate_model for well-formed input.
ClassModel parse_class_facts(std::string_view text);

std::string format_class_facts(const ClassModel& model);

/// One class per line: name then WMC DIT NOC CBO RFC LCOM Ca NPM.
MetricsTable parse_ckjm_metrics(std::string_view text);

/// Inverse of parse_ckjm_metrics; rows sorted by class name.
std::string format_ckjm_metrics(const MetricsTable& table);

/// "A -> B" or "A,B" per line; self-edges are dropped and tallied.
EdgeList parse_edges(std::string_view text);

std::string format_edges(const EdgeList& edges);

}  // namespace archrec
