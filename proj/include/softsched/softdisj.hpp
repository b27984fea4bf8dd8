#ifndef SOFTSCHED_SOFTDISJ_HPP
#define SOFTSCHED_SOFTDISJ_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "softsched/core.hpp"
#include "softsched/instance.hpp"
#include "softsched/types.hpp"

namespace softsched {

/// Half-open interval intersection of [s1, s1+d1) and [s2, s2+d2).
constexpr bool overlaps(TimeSlot s1, int d1, TimeSlot s2, int d2) {
  return s1 < s2 + d2 && s2 < s1 + d1;
}

/// Maximal partial u allowed for any activity; nullopt means unbounded.
using ViolationThreshold = std::optional<Penalty>;

class PostingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pairwise soft non-overlap between one activity and a list of partners.
///
/// The constraint listens to the instantiation of its own activity and of
/// every partner, so each pair needs to be posted once. When one endpoint
/// of a pair is fixed while the other is open, the weight is added to every
/// live value of the open endpoint that would overlap; values whose
/// violation share then exceeds the threshold are removed. When the second
/// endpoint is fixed the pair's violation is recorded in the incident
/// violation of both activities and checked against the threshold too.
class SoftDisjunctive final : public Propagator {
 public:
  SoftDisjunctive(ActivityId activity, std::vector<Arc> arcs, ViolationThreshold u_max)
      : activity_(activity), arcs_(std::move(arcs)), u_max_(u_max) {}

  ActivityId activity() const { return activity_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  ViolationThreshold threshold() const { return u_max_; }

  Propagation on_instantiate(Store& store, ActivityId fixed) override;

 private:
  Propagation propagate_arc(Store& store, ActivityId fixed, ActivityId other, Penalty weight) const;

  ActivityId activity_;
  std::vector<Arc> arcs_;
  ViolationThreshold u_max_;
};

/// Posts a soft disjunctive constraint for activity i against the given
/// partners. Throws PostingError on a self-loop, duplicate partner, zero
/// weight or unknown activity. An empty partner list yields an inert
/// constraint.
SoftDisjunctive& post_soft_disjunctive(Store& store, ActivityId i, std::vector<Arc> neighbors,
                                       ViolationThreshold u_max = std::nullopt);

/// Posts every soft pair of the store's instance exactly once.
void post_soft_disjunctives(Store& store, ViolationThreshold u_max = std::nullopt);

/// Weighted number of overlapping constrained pairs, each pair once.
Penalty eval_weighted(const Instance& instance, std::span<const TimeSlot> theta);

/// Weighted violations incident to activity i.
Penalty eval_u(const Instance& instance, std::span<const TimeSlot> theta, ActivityId i);

/// eval_u for every activity.
std::vector<Penalty> eval_u_all(const Instance& instance, std::span<const TimeSlot> theta);

/// min over activities of 1 - u(i) / (m (n - 1)), where m is the number of
/// unit soft requirements (sum of pair weights). Throws ContractViolation
/// when n < 2 or m = 0.
Rational eval_fuzzy(const Instance& instance, std::span<const TimeSlot> theta);

/// True when eval_fuzzy is defined for the instance.
bool fuzzy_defined(const Instance& instance);

/// u(i) / s_i. Throws ContractViolation when s_i = 0.
Rational eval_ratio(const Instance& instance, std::span<const TimeSlot> theta, ActivityId i);

/// Sum of initial costs of the chosen starts. Throws ContractViolation when
/// a start is not in the activity's domain.
Penalty eval_initial_cost(const Instance& instance, std::span<const TimeSlot> theta);

/// Initial costs plus weighted violations: the total penalty of theta.
inline Penalty eval_total(const Instance& instance, std::span<const TimeSlot> theta) {
  return checked_add(eval_initial_cost(instance, theta), eval_weighted(instance, theta));
}

}  // namespace softsched

#endif  // SOFTSCHED_SOFTDISJ_HPP
