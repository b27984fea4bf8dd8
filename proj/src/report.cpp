#include "softsched/report.hpp"

#include <algorithm>

#include "softsched/softcumul.hpp"
#include "softsched/softdisj.hpp"

namespace softsched {

Breakdown compute_breakdown(const Instance& instance, std::span<const TimeSlot> theta) {
  Breakdown b;
  b.initial_cost_sum = eval_initial_cost(instance, theta);
  b.violation_sum = eval_weighted(instance, theta);
  b.per_activity_u = eval_u_all(instance, theta);
  if (fuzzy_defined(instance)) b.fuzzy = eval_fuzzy(instance, theta);
  if (instance.total_weight() > 0)
    b.violated_pct_enrollment =
        100.0 * static_cast<double>(b.violation_sum) / static_cast<double>(instance.total_weight());
  Penalty worst_initial = 0;
  for (const auto& a : instance.activities()) {
    Penalty m = 0;
    for (const auto& e : a.domain) m = std::max(m, e.cost);
    worst_initial = checked_add(worst_initial, m);
  }
  if (worst_initial > 0)
    b.violated_pct_initial = 100.0 * static_cast<double>(b.initial_cost_sum) / static_cast<double>(worst_initial);
  return b;
}

SolutionFile make_solution_file(const Instance& instance, SolveStatus status, const std::optional<Incumbent>& best,
                                const SearchStats& stats) {
  SolutionFile f;
  f.status = to_string(status);
  f.optimal = status == SolveStatus::kOptimal;
  f.stats = stats;
  if (best) {
    f.assignment = best->assignment;
    f.cost = best->cost;
    f.breakdown = compute_breakdown(instance, best->assignment);
  }
  return f;
}

std::vector<std::string> check_solution(const Instance& instance, const SolutionFile& solution) {
  std::vector<std::string> issues;
  if (solution.assignment.empty() && instance.size() > 0) {
    if (solution.breakdown) issues.push_back("breakdown present without an assignment");
    return issues;
  }
  if (solution.assignment.size() != instance.size()) {
    issues.push_back("assignment covers " + std::to_string(solution.assignment.size()) + " of " +
                     std::to_string(instance.size()) + " activities");
    return issues;
  }
  Breakdown b;
  try {
    b = compute_breakdown(instance, solution.assignment);
  } catch (const ContractViolation& e) {
    issues.emplace_back(e.what());
    return issues;
  }
  if (!hard_feasible(instance, solution.assignment)) issues.push_back("assignment violates a hard resource limit");
  const auto cost = b.initial_cost_sum + b.violation_sum;
  if (cost != solution.cost)
    issues.push_back("cost " + std::to_string(solution.cost) + " but recomputed " + std::to_string(cost));
  if (!solution.breakdown) {
    issues.push_back("missing breakdown");
  } else {
    const auto& s = *solution.breakdown;
    if (s.initial_cost_sum != b.initial_cost_sum) issues.push_back("initial_cost_sum mismatch");
    if (s.violation_sum != b.violation_sum) issues.push_back("violation_sum mismatch");
    if (s.per_activity_u != b.per_activity_u) issues.push_back("per_activity_u mismatch");
    if (s.fuzzy != b.fuzzy) issues.push_back("fuzzy mismatch");
    if (s.violated_pct_enrollment != b.violated_pct_enrollment) issues.push_back("violated_pct_enrollment mismatch");
    if (s.violated_pct_initial != b.violated_pct_initial) issues.push_back("violated_pct_initial mismatch");
  }
  return issues;
}

}  // namespace softsched
