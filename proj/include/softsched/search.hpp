#ifndef SOFTSCHED_SEARCH_HPP
#define SOFTSCHED_SEARCH_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "softsched/core.hpp"
#include "softsched/instance.hpp"
#include "softsched/softcumul.hpp"
#include "softsched/softdisj.hpp"

namespace softsched {

enum class LbMode { kNone, kMin, kExp };

/// How "most constrained" is measured.
enum class VariableOrdering {
  kArcCount,   ///< number of soft arcs to unassigned partners
  kArcWeight,  ///< summed weight of those arcs
};

struct SearchConfig {
  std::optional<std::chrono::duration<double>> time_limit;
  std::optional<std::uint64_t> node_limit;
  ViolationThreshold u_max;
  LbMode lb_mode = LbMode::kNone;
  std::uint32_t lb_period = 1;
  std::uint64_t seed = 0;  // reserved; the default heuristics are deterministic
  VariableOrdering ordering = VariableOrdering::kArcCount;
  MinWeightSharing sharing = MinWeightSharing::kExclusive;

  /// Throws std::invalid_argument on a non-positive limit or period.
  void validate() const;
};

struct Incumbent {
  Assignment assignment;
  Penalty cost = 0;
  double elapsed_seconds = 0.0;
  std::uint64_t nodes = 0;
};

enum class SolveStatus {
  kOptimal,        ///< search exhausted, incumbent proven optimal
  kFeasible,       ///< limit or interrupt hit after at least one incumbent
  kInfeasible,     ///< search exhausted without a complete assignment
  kNoSolutionYet,  ///< limit or interrupt hit before any incumbent
};

const char* to_string(SolveStatus status);

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  std::uint64_t incumbents = 0;
  double elapsed_seconds = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kNoSolutionYet;
  std::optional<Incumbent> best;
  SearchStats stats;

  bool optimal() const { return status == SolveStatus::kOptimal; }
};

/// Cooperative cancellation, checked at node boundaries. Copies share state.
class CancelToken {
 public:
  CancelToken() : flag_(std::make_shared<std::atomic<bool>>(false)) {}
  void request() const { flag_->store(true, std::memory_order_relaxed); }
  bool requested() const { return flag_->load(std::memory_order_relaxed); }
  /// Lock-free flag, usable from a signal handler.
  std::atomic<bool>& flag() const { return *flag_; }

 private:
  std::shared_ptr<std::atomic<bool>> flag_;
};

/// Callbacks run synchronously from inside the search; they must not touch
/// the store beyond reading it.
struct SearchHooks {
  std::function<void(const Incumbent&)> on_incumbent;
  /// Every complete assignment reached, before the hard at-least check.
  std::function<void(const Store&)> on_leaf;
  std::optional<CancelToken> cancel;
};

/// Most constrained unassigned activity; ties go to the smaller min_penalty,
/// then to the smaller id. nullopt when everything is assigned.
std::optional<ActivityId> select_variable(const Store& store,
                                          VariableOrdering ordering = VariableOrdering::kArcCount);

/// Live values by penalty, then slot.
std::vector<TimeSlot> order_values(const PreferenceVariable& var);

/// Anytime depth-first branch and bound.
SolveResult solve(const Instance& instance, const SearchConfig& config, const SearchHooks& hooks = {});

/// Config whose threshold forbids the worst incident violation of the
/// previous incumbent. nullopt when that worst value is already 0.
std::optional<SearchConfig> restart_tightening(const Instance& instance, const Incumbent& previous,
                                               SearchConfig config);

struct RestartResult {
  SolveStatus status = SolveStatus::kNoSolutionYet;  ///< kOptimal when worst-case optimality is proven
  std::optional<Incumbent> best;
  std::uint32_t rounds = 0;
  SearchStats stats;
};

/// Repeats solve with restart_tightening until no tighter threshold is
/// possible or the tightened problem has no solution. Limits in `config`
/// apply to the whole sequence.
RestartResult solve_fuzzy_restart(const Instance& instance, const SearchConfig& config,
                                  const SearchHooks& hooks = {});

}  // namespace softsched

#endif  // SOFTSCHED_SEARCH_HPP
