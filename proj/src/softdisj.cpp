#include "softsched/softdisj.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace softsched {

namespace {

void require_complete(const Instance& instance, std::span<const TimeSlot> theta) {
  if (theta.size() != instance.size())
    throw ContractViolation("assignment has " + std::to_string(theta.size()) + " starts for " +
                            std::to_string(instance.size()) + " activities");
}

bool exceeds(const ViolationThreshold& u_max, Penalty value) { return u_max && value > *u_max; }

}  // namespace

Propagation SoftDisjunctive::on_instantiate(Store& store, ActivityId fixed) {
  if (fixed == activity_) {
    for (const auto& arc : arcs_)
      if (propagate_arc(store, activity_, arc.neighbor, arc.weight) == Propagation::kFailure)
        return Propagation::kFailure;
    return Propagation::kConsistent;
  }
  for (const auto& arc : arcs_)
    if (arc.neighbor == fixed) return propagate_arc(store, fixed, activity_, arc.weight);
  return Propagation::kConsistent;
}

Propagation SoftDisjunctive::propagate_arc(Store& store, ActivityId fixed, ActivityId other,
                                           Penalty weight) const {
  const auto& instance = store.instance();
  const TimeSlot v = *store.var(fixed).assigned();
  const int d_fixed = instance.activity(fixed).duration;
  const int d_other = instance.activity(other).duration;
  auto& target = store.var(other);

  if (target.is_assigned()) {
    if (!overlaps(v, d_fixed, *target.assigned(), d_other)) return Propagation::kConsistent;
    store.add_incident_violation(fixed, weight);
    store.add_incident_violation(other, weight);
    if (exceeds(u_max_, store.incident_violation(fixed)) || exceeds(u_max_, store.incident_violation(other)))
      return Propagation::kFailure;
    return Propagation::kConsistent;
  }

  const TimeSlot lo = std::max(target.grid_lower(), v - d_other + 1);
  const TimeSlot hi = std::min(target.grid_upper(), v + d_fixed - 1);
  for (TimeSlot u = lo; u <= hi; ++u) {
    if (!target.contains(u)) continue;
    add_penalty(target, u, weight, store.trail());
    if (exceeds(u_max_, target.violation_share(u)) &&
        remove_value(target, u, store.trail()) == Propagation::kFailure)
      return Propagation::kFailure;
  }
  return Propagation::kConsistent;
}

SoftDisjunctive& post_soft_disjunctive(Store& store, ActivityId i, std::vector<Arc> neighbors,
                                       ViolationThreshold u_max) {
  const auto n = static_cast<ActivityId>(store.size());
  if (i < 0 || i >= n) throw PostingError("unknown activity " + std::to_string(i));
  std::set<ActivityId> seen;
  for (const auto& arc : neighbors) {
    if (arc.neighbor < 0 || arc.neighbor >= n)
      throw PostingError("unknown neighbor " + std::to_string(arc.neighbor));
    if (arc.neighbor == i) throw PostingError("activity " + std::to_string(i) + " listed as its own neighbor");
    if (arc.weight < 1) throw PostingError("soft disjunctive weight must be >= 1");
    if (!seen.insert(arc.neighbor).second)
      throw PostingError("duplicate neighbor " + std::to_string(arc.neighbor));
  }
  auto& c = store.post<SoftDisjunctive>(i, std::move(neighbors), u_max);
  store.subscribe(i, c);
  for (const auto& arc : c.arcs()) store.subscribe(arc.neighbor, c);
  return c;
}

void post_soft_disjunctives(Store& store, ViolationThreshold u_max) {
  const auto& instance = store.instance();
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const auto id = static_cast<ActivityId>(i);
    std::vector<Arc> forward;
    for (const auto& arc : instance.arcs(id))
      if (arc.neighbor > id) forward.push_back(arc);
    if (!forward.empty()) post_soft_disjunctive(store, id, std::move(forward), u_max);
  }
}

Penalty eval_weighted(const Instance& instance, std::span<const TimeSlot> theta) {
  require_complete(instance, theta);
  Penalty total = 0;
  for (const auto& p : instance.pairs()) {
    if (overlaps(theta[static_cast<std::size_t>(p.a)], instance.activity(p.a).duration,
                 theta[static_cast<std::size_t>(p.b)], instance.activity(p.b).duration))
      total = checked_add(total, p.weight);
  }
  return total;
}

Penalty eval_u(const Instance& instance, std::span<const TimeSlot> theta, ActivityId i) {
  require_complete(instance, theta);
  const auto si = theta[static_cast<std::size_t>(i)];
  const auto di = instance.activity(i).duration;
  Penalty u = 0;
  for (const auto& arc : instance.arcs(i)) {
    if (overlaps(si, di, theta[static_cast<std::size_t>(arc.neighbor)], instance.activity(arc.neighbor).duration))
      u = checked_add(u, arc.weight);
  }
  return u;
}

std::vector<Penalty> eval_u_all(const Instance& instance, std::span<const TimeSlot> theta) {
  std::vector<Penalty> out(instance.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = eval_u(instance, theta, static_cast<ActivityId>(i));
  return out;
}

bool fuzzy_defined(const Instance& instance) { return instance.size() >= 2 && instance.total_weight() >= 1; }

Rational eval_fuzzy(const Instance& instance, std::span<const TimeSlot> theta) {
  if (!fuzzy_defined(instance))
    throw ContractViolation("fuzzy objective needs at least two activities and one soft requirement");
  Penalty worst = 0;
  for (const auto u : eval_u_all(instance, theta)) worst = std::max(worst, u);
  const auto scale = static_cast<std::int64_t>(instance.total_weight()) *
                     static_cast<std::int64_t>(instance.size() - 1);
  return Rational(1) - Rational(static_cast<std::int64_t>(worst), scale);
}

Rational eval_ratio(const Instance& instance, std::span<const TimeSlot> theta, ActivityId i) {
  const auto s = instance.activity(i).enrollment;
  if (s == 0) throw ContractViolation("ratio undefined for activity " + std::to_string(i) + " with no enrollment");
  return Rational(static_cast<std::int64_t>(eval_u(instance, theta, i)), static_cast<std::int64_t>(s));
}

Penalty eval_initial_cost(const Instance& instance, std::span<const TimeSlot> theta) {
  require_complete(instance, theta);
  Penalty total = 0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const auto& dom = instance.activities()[i].domain;
    const auto it = std::lower_bound(dom.begin(), dom.end(), theta[i],
                                     [](const DomainEntry& e, TimeSlot t) { return e.slot < t; });
    if (it == dom.end() || it->slot != theta[i])
      throw ContractViolation("start " + std::to_string(theta[i]) + " not in domain of activity " + std::to_string(i));
    total = checked_add(total, it->cost);
  }
  return total;
}

}  // namespace softsched
