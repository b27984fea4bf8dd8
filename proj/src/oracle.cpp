#include "softsched/oracle.hpp"

#include <algorithm>
#include <sstream>

namespace softsched {

OracleResult enumerate_optimum(const Instance& instance, Objective objective, const OracleOptions& options) {
  if (objective == Objective::kFuzzy && !fuzzy_defined(instance))
    throw ContractViolation("fuzzy objective undefined for this instance");

  std::uint64_t product = 1;
  for (const auto& a : instance.activities()) {
    product *= a.domain.size();
    if (product > options.cap)
      throw EnumerationRefused("domain product exceeds enumeration cap of " + std::to_string(options.cap));
  }

  OracleResult out;
  out.objective = objective;
  const auto n = instance.size();
  std::vector<std::size_t> digit(n, 0);
  Assignment theta(n);
  for (std::size_t i = 0; i < n; ++i) theta[i] = instance.activities()[i].domain[0].slot;

  for (;;) {
    ++out.evaluated;
    bool keep = hard_feasible(instance, theta);
    if (keep && options.u_max) {
      for (std::size_t i = 0; i < n && keep; ++i)
        keep = eval_u(instance, theta, static_cast<ActivityId>(i)) <= *options.u_max;
    }
    if (keep) {
      if (objective == Objective::kWeighted) {
        const auto cost = eval_total(instance, theta);
        if (!out.feasible || cost < out.optimal_cost) {
          out.optimal_cost = cost;
          out.optima.clear();
        }
        if (!out.feasible || cost == out.optimal_cost) out.optima.push_back(theta);
      } else {
        const auto value = eval_fuzzy(instance, theta);
        if (!out.feasible || value > out.optimal_fuzzy) {
          out.optimal_fuzzy = value;
          out.optima.clear();
        }
        if (!out.feasible || value == out.optimal_fuzzy) out.optima.push_back(theta);
      }
      out.feasible = true;
    }

    std::size_t i = 0;
    for (; i < n; ++i) {
      const auto& dom = instance.activities()[i].domain;
      if (++digit[i] < dom.size()) {
        theta[i] = dom[digit[i]].slot;
        break;
      }
      digit[i] = 0;
      theta[i] = dom[0].slot;
    }
    if (i == n) break;
  }
  return out;
}

namespace {

std::string dump(const Assignment& theta) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < theta.size(); ++i) os << (i ? ", " : "") << "a" << i << "@" << theta[i];
  os << "]";
  return os.str();
}

}  // namespace

BoundReport verify_bound(const Instance& instance, MinWeightSharing rule, const OracleOptions& options) {
  OracleOptions plain = options;
  plain.u_max.reset();
  const auto oracle = enumerate_optimum(instance, Objective::kWeighted, plain);

  Store store(instance);
  BoundReport report;
  report.feasible = oracle.feasible;
  report.optimum = oracle.optimal_cost;
  const auto none = node_lower_bound(store, std::nullopt, rule);
  const auto min = node_lower_bound(store, BoundMode::kMin, rule);
  const auto exp = node_lower_bound(store, BoundMode::kExp, rule);
  report.bound_none = none.value;
  report.bound_min = min.value;
  report.bound_exp = exp.value;
  report.bound_feasible = min.feasible && exp.feasible;

  std::ostringstream why;
  if (!oracle.feasible) {
    report.ok = true;  // nothing to bound
    return report;
  }
  const Rational opt(static_cast<std::int64_t>(oracle.optimal_cost));
  if (!min.feasible || !exp.feasible) why << "bound reports infeasible but optimum " << oracle.optimal_cost << " exists; ";
  if (min.feasible && min.value > opt) why << "MIN bound " << to_string(min.value) << " > optimum; ";
  if (exp.feasible && exp.value > opt) why << "EXP bound " << to_string(exp.value) << " > optimum; ";
  if (none.value > opt) why << "base bound " << to_string(none.value) << " > optimum; ";
  if (!why.str().empty()) {
    report.ok = false;
    report.counterexample =
        why.str() + "optimum " + std::to_string(oracle.optimal_cost) + " at " + dump(oracle.optima.front());
  }
  return report;
}

}  // namespace softsched
