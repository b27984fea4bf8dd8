#ifndef SOFTSCHED_IO_HPP
#define SOFTSCHED_IO_HPP

#include <string>
#include <string_view>

#include "softsched/instance.hpp"
#include "softsched/report.hpp"
#include "softsched/search.hpp"

namespace softsched {

inline constexpr int kFormatVersion = 1;

/// Strict JSON instance reader. Unknown fields, missing fields and wrong
/// types are rejected with an InstanceError that names the field (as a JSON
/// pointer) or the line and column of a syntax error. Duplicate soft pairs
/// are merged by summing weights.
Instance parse_instance(std::string_view text);

/// Canonical JSON form: fixed field order, pairs normalized to a < b.
std::string serialize_instance(const Instance& instance);

/// `include_elapsed = false` drops every wall-clock field, which makes the
/// output a pure function of instance and configuration.
std::string serialize_solution(const SolutionFile& solution, bool include_elapsed = true);

SolutionFile parse_solution(std::string_view text);

/// One line of the incumbent stream: {"cost":..,"elapsed":..,"nodes":..}.
std::string incumbent_record(const Incumbent& incumbent);

}  // namespace softsched

#endif  // SOFTSCHED_IO_HPP
