#ifndef SOFTSCHED_ORACLE_HPP
#define SOFTSCHED_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "softsched/instance.hpp"
#include "softsched/softcumul.hpp"
#include "softsched/softdisj.hpp"

namespace softsched {

enum class Objective { kWeighted, kFuzzy };

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

class EnumerationRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleOptions {
  std::uint64_t cap = kDefaultEnumerationCap;
  /// Keep only assignments whose every incident violation is <= u_max.
  ViolationThreshold u_max;
};

struct OracleResult {
  Objective objective = Objective::kWeighted;
  bool feasible = false;
  Penalty optimal_cost = 0;  ///< kWeighted: min of initial costs + violations
  Rational optimal_fuzzy{0};  ///< kFuzzy: max of the fuzzy objective
  std::vector<Assignment> optima;
  std::uint64_t evaluated = 0;
};

/// Exhaustive enumeration of the Cartesian product of start domains.
/// Throws EnumerationRefused when the product exceeds the cap, and
/// ContractViolation for kFuzzy on an instance where it is undefined.
OracleResult enumerate_optimum(const Instance& instance, Objective objective, const OracleOptions& options = {});

struct BoundReport {
  bool feasible = false;       ///< the instance has a hard-feasible assignment
  bool bound_feasible = true;  ///< no bound reported infeasibility
  Penalty optimum = 0;
  Rational bound_none{0};
  Rational bound_min{0};
  Rational bound_exp{0};
  bool ok = true;
  /// Set when a bound exceeds the optimum or wrongly reports infeasibility.
  std::string counterexample;

  Rational slack_min() const { return Rational(static_cast<std::int64_t>(optimum)) - bound_min; }
  Rational slack_exp() const { return Rational(static_cast<std::int64_t>(optimum)) - bound_exp; }
};

/// Compares the root lower bounds with the enumerated optimum.
BoundReport verify_bound(const Instance& instance, MinWeightSharing rule = MinWeightSharing::kExclusive,
                         const OracleOptions& options = {});

}  // namespace softsched

#endif  // SOFTSCHED_ORACLE_HPP
