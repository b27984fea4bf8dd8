#ifndef SOFTSCHED_SOFTCUMUL_HPP
#define SOFTSCHED_SOFTCUMUL_HPP

#include <optional>
#include <span>
#include <vector>

#include "softsched/core.hpp"
#include "softsched/instance.hpp"
#include "softsched/types.hpp"

namespace softsched {

/// Minimal expected weight m(a) per activity, shared by every resource
/// processed against it. An activity can also be marked as charged: a later
/// resource then sees no excess left for it.
class MinWeightTable {
 public:
  explicit MinWeightTable(std::size_t activities)
      : weight_(activities), charged_(activities, 0) {}

  /// m(a) = smallest live penalty for every unassigned activity of the store.
  static MinWeightTable from_store(const Store& store);

  bool contains(ActivityId a) const { return weight_[idx(a)].has_value(); }
  /// Throws ContractViolation when a has no entry.
  Penalty get(ActivityId a) const;
  void set(ActivityId a, Penalty m) { weight_[idx(a)] = m; }
  void raise(ActivityId a, Penalty by) { weight_[idx(a)] = checked_add(get(a), by); }

  bool charged(ActivityId a) const { return charged_[idx(a)] != 0; }
  void mark_charged(ActivityId a) { charged_[idx(a)] = 1; }

  std::size_t size() const { return weight_.size(); }

 private:
  static std::size_t idx(ActivityId a) { return static_cast<std::size_t>(a); }
  std::vector<std::optional<Penalty>> weight_;
  std::vector<char> charged_;
};

/// L = sum of m(a) over the scope. Throws ContractViolation on a missing entry.
Penalty base_lower_bound(const MinWeightTable& table, std::span<const ActivityId> scope);

/// Excess penalty activity a must pay to be in execution at slot t: the
/// smallest penalty over its live starts in [t - d + 1, t], minus m(a),
/// floored at zero. nullopt when no live start puts a in execution at t.
/// A charged activity has no excess left.
std::optional<Penalty> delta(TimeSlot t, ActivityId a, const Store& store, const MinWeightTable& table);

/// One capacity unit of an activity. A demand-k activity is seen as k units
/// that share its start variable and duration.
struct UnitView {
  ActivityId activity = 0;
  int unit = 0;
  int duration = 1;
  int demand = 1;
};

/// Throws ContractViolation when k < 1.
std::vector<UnitView> unit_capacity_expand(const Instance& instance, ActivityId a, int k);

enum class BoundMode {
  kMin,  ///< c_t = minimal capacity
  kExp,  ///< c_t = expected capacity, limited to what is provably in use
};

struct SlotSelection {
  TimeSlot slot = 0;
  ActivityId activity = 0;
  int unit = 0;
  Rational ratio;
};

struct Contribution {
  Rational value{0};
  bool feasible = true;
  std::optional<TimeSlot> deficit_slot;
  std::vector<SlotSelection> selected;
};

/// Lower-bound contribution of resource r for the open activities of the
/// store. Assigned members are removed from the ordering and reduce the
/// per-slot count by the units they occupy. At each slot the open units are
/// ordered by delta / (duration * demand), ties by activity then unit, and
/// the first c_t ratios are summed. Reports infeasible when fewer runnable
/// units than c_t exist at some slot.
///
/// In kExp mode the per-slot count is min(cap_exp, max(cap_min, units
/// provably running)), where provably running units are those already
/// assigned plus open activities whose every live start covers the slot.
Contribution resource_contribution(std::size_t r, const Store& store, const MinWeightTable& table,
                                   BoundMode mode);

enum class MinWeightSharing {
  /// m(a) += floor(sum of a's selected ratios). Sound only when resources
  /// do not share activities over common slots.
  kSelectedShare,
  /// Every open member of the processed resource is marked charged.
  kExclusive,
};

/// Pushes the result of one resource back into the shared table so later
/// resources do not count the same excess twice.
void update_min_weights(std::size_t r, const Contribution& contribution, const Store& store,
                        MinWeightTable& table, MinWeightSharing rule);

struct LowerBound {
  Rational value{0};
  bool feasible = true;
};

/// Assigned cost + base bound over open activities + the contribution of
/// every resource in declaration order (when mode is set), with min-weight
/// sharing between resources.
LowerBound node_lower_bound(const Store& store, std::optional<BoundMode> mode,
                            MinWeightSharing rule = MinWeightSharing::kExclusive);

using PartialAssignment = std::vector<std::optional<TimeSlot>>;

/// First slot where assigned members exceed cap_max, or nullopt.
std::optional<TimeSlot> check_cumulative_max(const Instance& instance, std::size_t r,
                                             const PartialAssignment& theta);
std::optional<TimeSlot> check_cumulative_max(const Instance& instance, std::size_t r,
                                             std::span<const TimeSlot> theta);

/// First slot where occupancy falls below cap_min, or nullopt. theta must
/// be complete.
std::optional<TimeSlot> check_atleast(const Instance& instance, std::size_t r, std::span<const TimeSlot> theta);

/// Every resource passes both hard checks.
bool hard_feasible(const Instance& instance, std::span<const TimeSlot> theta);

/// Hard "at most" capacity check run after each instantiation.
class CumulativeMax final : public Propagator {
 public:
  Propagation on_instantiate(Store& store, ActivityId activity) override;
};

/// Subscribes one CumulativeMax to every activity that uses a resource.
void post_cumulative_max(Store& store);

}  // namespace softsched

#endif  // SOFTSCHED_SOFTCUMUL_HPP
