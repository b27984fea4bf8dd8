#ifndef SOFTSCHED_REPORT_HPP
#define SOFTSCHED_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "softsched/instance.hpp"
#include "softsched/search.hpp"

namespace softsched {

struct Breakdown {
  Penalty initial_cost_sum = 0;
  Penalty violation_sum = 0;
  std::vector<Penalty> per_activity_u;
  std::optional<Rational> fuzzy;  ///< absent when undefined for the instance
  /// 100 * violation_sum / sum of pair weights.
  double violated_pct_enrollment = 0.0;
  /// 100 * chosen initial costs / sum over activities of the largest
  /// initial cost in the domain.
  double violated_pct_initial = 0.0;

  friend bool operator==(const Breakdown&, const Breakdown&) = default;
};

Breakdown compute_breakdown(const Instance& instance, std::span<const TimeSlot> theta);

struct SolutionFile {
  std::string status = "no-solution";
  bool optimal = false;
  Assignment assignment;  ///< empty when no solution is known
  Penalty cost = 0;
  std::optional<Breakdown> breakdown;
  SearchStats stats;
};

SolutionFile make_solution_file(const Instance& instance, SolveStatus status, const std::optional<Incumbent>& best,
                                const SearchStats& stats);

/// Recomputes the breakdown from the assignment and compares with what the
/// file claims. Returns a description of each mismatch.
std::vector<std::string> check_solution(const Instance& instance, const SolutionFile& solution);

}  // namespace softsched

#endif  // SOFTSCHED_REPORT_HPP
