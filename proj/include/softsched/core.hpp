#ifndef SOFTSCHED_CORE_HPP
#define SOFTSCHED_CORE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "softsched/instance.hpp"
#include "softsched/types.hpp"

namespace softsched {

/// Result of a store mutation that may empty a domain.
enum class Propagation { kConsistent, kFailure };

class Trail;

/// Bad arguments to new_pref_var.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite domain over a contiguous slot grid where every live value carries a
/// penalty. The penalty is split into the initial cost of the value and the
/// violation share accumulated by soft disjunctive propagation; both are
/// natural numbers and the reported penalty is their sum.
class PreferenceVariable {
 public:
  /// Throws DomainError on an empty list, a duplicate slot or a negative slot.
  static PreferenceVariable create(std::span<const std::pair<TimeSlot, Penalty>> pairs);
  static PreferenceVariable create(std::initializer_list<std::pair<TimeSlot, Penalty>> pairs) {
    return create(std::span<const std::pair<TimeSlot, Penalty>>(pairs.begin(), pairs.size()));
  }

  bool contains(TimeSlot t) const {
    return t >= offset_ && t < offset_ + static_cast<TimeSlot>(live_.size()) && live_[index(t)] != 0;
  }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  /// Smallest and largest slot of the original grid (not necessarily live).
  TimeSlot grid_lower() const { return offset_; }
  TimeSlot grid_upper() const { return offset_ + static_cast<TimeSlot>(live_.size()) - 1; }

  Penalty penalty(TimeSlot t) const { return initial_[index(t)] + share_[index(t)]; }
  Penalty initial_cost(TimeSlot t) const { return initial_[index(t)]; }
  Penalty violation_share(TimeSlot t) const { return share_[index(t)]; }

  bool is_assigned() const { return assigned_.has_value(); }
  std::optional<TimeSlot> assigned() const { return assigned_; }

  /// Live values in ascending slot order.
  std::vector<TimeSlot> values() const;

  template <typename F>
  void for_each_value(F&& f) const {
    for (std::size_t k = 0; k < live_.size(); ++k)
      if (live_[k]) f(offset_ + static_cast<TimeSlot>(k));
  }

  friend bool operator==(const PreferenceVariable&, const PreferenceVariable&) = default;

 private:
  friend class Trail;
  friend Propagation remove_value(PreferenceVariable&, TimeSlot, Trail&);
  friend void add_penalty(PreferenceVariable&, TimeSlot, Penalty, Trail&);
  friend void assign(PreferenceVariable&, TimeSlot, Trail&);

  std::size_t index(TimeSlot t) const { return static_cast<std::size_t>(t - offset_); }

  TimeSlot offset_ = 0;
  std::vector<char> live_;
  std::vector<Penalty> initial_;
  std::vector<Penalty> share_;
  std::size_t size_ = 0;
  std::optional<TimeSlot> assigned_;
};

/// Reversible log of store mutations. undo_to(mark) restores the exact state
/// that existed when mark() returned.
class Trail {
 public:
  using Mark = std::size_t;

  Mark mark() const { return entries_.size(); }
  std::size_t size() const { return entries_.size(); }
  void undo_to(Mark mark);

  /// Adds delta to a counter owned by the caller and records the change.
  void add_to_counter(std::uint64_t& counter, std::uint64_t delta);
  void subtract_from_counter(std::uint64_t& counter, std::uint64_t delta) {
    add_to_counter(counter, 0 - delta);  // modular; undo restores exactly
  }

 private:
  friend Propagation remove_value(PreferenceVariable&, TimeSlot, Trail&);
  friend void add_penalty(PreferenceVariable&, TimeSlot, Penalty, Trail&);
  friend void assign(PreferenceVariable&, TimeSlot, Trail&);

  enum class Kind : std::uint8_t { kRemoval, kPenalty, kAssign, kCounter };
  struct Entry {
    Kind kind;
    TimeSlot slot;
    PreferenceVariable* var;
    std::uint64_t* counter;
    std::uint64_t amount;
  };

  std::vector<Entry> entries_;
};

/// Removes a live value. Returns kFailure when the domain becomes empty.
/// Throws ContractViolation if the value is not live.
Propagation remove_value(PreferenceVariable& var, TimeSlot value, Trail& trail);

/// Adds delta to the violation share of a live value. A value that is no
/// longer live is silently skipped; delta 0 leaves no trail record.
void add_penalty(PreferenceVariable& var, TimeSlot value, Penalty delta, Trail& trail);

/// Instantiates the variable, removing every other value. Throws
/// ContractViolation if the value is not live or the variable is assigned.
void assign(PreferenceVariable& var, TimeSlot value, Trail& trail);

/// Value with the smallest penalty; ties go to the smallest slot.
std::pair<TimeSlot, Penalty> min_penalty(const PreferenceVariable& var);

class Store;

/// Constraint suspended on instantiation events of one or more activities.
class Propagator {
 public:
  virtual ~Propagator() = default;
  virtual Propagation on_instantiate(Store& store, ActivityId activity) = 0;
};

/// Domain store for one search: one preference variable per activity plus the
/// bookkeeping that propagators and the search read (resource occupancy,
/// incident violation per activity, unresolved soft arcs per activity).
/// Not copyable or movable; the trail holds pointers into it.
class Store {
 public:
  explicit Store(const Instance& instance);
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  const Instance& instance() const { return *instance_; }
  std::size_t size() const { return vars_.size(); }

  const PreferenceVariable& var(ActivityId i) const { return vars_[idx(i)]; }
  PreferenceVariable& var(ActivityId i) { return vars_[idx(i)]; }
  Trail& trail() { return trail_; }

  Trail::Mark mark() const { return trail_.mark(); }
  void undo_to(Trail::Mark mark) { trail_.undo_to(mark); }

  /// Instantiates activity i, updates resource occupancy and open-arc counts,
  /// then delivers the event to every propagator subscribed to i in
  /// registration order. Stops at the first failure.
  Propagation assign(ActivityId i, TimeSlot value);

  /// Takes ownership of a propagator; subscribe() wires it to events.
  template <typename P, typename... Args>
  P& post(Args&&... args) {
    auto owned = std::make_unique<P>(std::forward<Args>(args)...);
    P& ref = *owned;
    propagators_.push_back(std::move(owned));
    return ref;
  }
  void subscribe(ActivityId i, Propagator& p) { watchers_[idx(i)].push_back(&p); }
  std::size_t subscriptions(ActivityId i) const { return watchers_[idx(i)].size(); }

  std::size_t assigned_count() const { return static_cast<std::size_t>(assigned_count_); }

  /// Units of resource r in use at slot t by assigned activities.
  std::uint64_t occupancy(std::size_t r, TimeSlot t) const;

  /// Weighted violations between i and already-assigned partners (the
  /// partial u of i).
  Penalty incident_violation(ActivityId i) const { return incident_[idx(i)]; }
  void add_incident_violation(ActivityId i, Penalty w) { trail_.add_to_counter(incident_[idx(i)], w); }

  /// Soft arcs from i to activities that are not yet assigned.
  std::uint64_t open_arcs(ActivityId i) const { return open_arcs_[idx(i)]; }
  Penalty open_arc_weight(ActivityId i) const { return open_weight_[idx(i)]; }

  /// Sum of penalties at assigned values.
  Penalty assigned_cost() const;

  /// Assignment of every activity; throws ContractViolation if incomplete.
  Assignment assignment() const;

  /// Store equality over domains, penalties and counters (ignores propagators).
  bool same_state(const Store& other) const;

 private:
  static std::size_t idx(ActivityId i) { return static_cast<std::size_t>(i); }

  const Instance* instance_;
  std::vector<PreferenceVariable> vars_;
  Trail trail_;
  std::vector<std::vector<std::uint64_t>> occupancy_;
  std::vector<std::uint64_t> incident_;
  std::vector<std::uint64_t> open_arcs_;
  std::vector<std::uint64_t> open_weight_;
  std::uint64_t assigned_count_ = 0;
  std::vector<std::unique_ptr<Propagator>> propagators_;
  std::vector<std::vector<Propagator*>> watchers_;
};

}  // namespace softsched

#endif  // SOFTSCHED_CORE_HPP
