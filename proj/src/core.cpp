#include "softsched/core.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace softsched {

PreferenceVariable PreferenceVariable::create(std::span<const std::pair<TimeSlot, Penalty>> pairs) {
  if (pairs.empty()) throw DomainError("preference variable needs at least one value");
  TimeSlot lo = pairs.front().first;
  TimeSlot hi = lo;
  for (const auto& [slot, cost] : pairs) {
    if (slot < 0) throw DomainError("negative time slot " + std::to_string(slot));
    lo = std::min(lo, slot);
    hi = std::max(hi, slot);
  }
  PreferenceVariable v;
  v.offset_ = lo;
  const auto width = static_cast<std::size_t>(hi - lo + 1);
  v.live_.assign(width, 0);
  v.initial_.assign(width, 0);
  v.share_.assign(width, 0);
  for (const auto& [slot, cost] : pairs) {
    const auto k = v.index(slot);
    if (v.live_[k]) throw DomainError("duplicate value " + std::to_string(slot));
    v.live_[k] = 1;
    v.initial_[k] = cost;
  }
  v.size_ = pairs.size();
  return v;
}

std::vector<TimeSlot> PreferenceVariable::values() const {
  std::vector<TimeSlot> out;
  out.reserve(size_);
  for_each_value([&](TimeSlot t) { out.push_back(t); });
  return out;
}

void Trail::undo_to(Mark mark) {
  while (entries_.size() > mark) {
    const Entry e = entries_.back();
    entries_.pop_back();
    switch (e.kind) {
      case Kind::kRemoval:
        e.var->live_[e.var->index(e.slot)] = 1;
        ++e.var->size_;
        break;
      case Kind::kPenalty:
        e.var->share_[e.var->index(e.slot)] -= e.amount;
        break;
      case Kind::kAssign:
        e.var->assigned_.reset();
        break;
      case Kind::kCounter:
        *e.counter -= e.amount;
        break;
    }
  }
}

void Trail::add_to_counter(std::uint64_t& counter, std::uint64_t delta) {
  if (delta == 0) return;
  counter += delta;
  entries_.push_back({Kind::kCounter, 0, nullptr, &counter, delta});
}

Propagation remove_value(PreferenceVariable& var, TimeSlot value, Trail& trail) {
  if (!var.contains(value))
    throw ContractViolation("remove_value: " + std::to_string(value) + " is not in the domain");
  var.live_[var.index(value)] = 0;
  --var.size_;
  trail.entries_.push_back({Trail::Kind::kRemoval, value, &var, nullptr, 0});
  return var.size_ == 0 ? Propagation::kFailure : Propagation::kConsistent;
}

void add_penalty(PreferenceVariable& var, TimeSlot value, Penalty delta, Trail& trail) {
  if (delta == 0 || !var.contains(value)) return;
  auto& share = var.share_[var.index(value)];
  const Penalty updated = checked_add(share, delta);
  (void)checked_add(updated, var.initial_[var.index(value)]);
  share = updated;
  trail.entries_.push_back({Trail::Kind::kPenalty, value, &var, nullptr, delta});
}

void assign(PreferenceVariable& var, TimeSlot value, Trail& trail) {
  if (var.assigned_) throw ContractViolation("assign: variable already assigned");
  if (!var.contains(value))
    throw ContractViolation("assign: " + std::to_string(value) + " is not in the domain");
  for (std::size_t k = 0; k < var.live_.size(); ++k) {
    const auto t = var.offset_ + static_cast<TimeSlot>(k);
    if (var.live_[k] && t != value) {
      var.live_[k] = 0;
      --var.size_;
      trail.entries_.push_back({Trail::Kind::kRemoval, t, &var, nullptr, 0});
    }
  }
  var.assigned_ = value;
  trail.entries_.push_back({Trail::Kind::kAssign, value, &var, nullptr, 0});
}

std::pair<TimeSlot, Penalty> min_penalty(const PreferenceVariable& var) {
  if (var.empty()) throw ContractViolation("min_penalty: empty domain");
  std::pair<TimeSlot, Penalty> best{0, kInfinitePenalty};
  bool found = false;
  var.for_each_value([&](TimeSlot t) {
    const auto p = var.penalty(t);
    if (!found || p < best.second) {
      best = {t, p};
      found = true;
    }
  });
  return best;
}

Store::Store(const Instance& instance) : instance_(&instance) {
  const auto n = instance.size();
  vars_.reserve(n);
  std::vector<std::pair<TimeSlot, Penalty>> pairs;
  for (const auto& a : instance.activities()) {
    pairs.clear();
    for (const auto& e : a.domain) pairs.emplace_back(e.slot, e.cost);
    vars_.push_back(PreferenceVariable::create(pairs));
  }
  for (const auto& r : instance.resources()) occupancy_.emplace_back(r.width(), 0);
  incident_.assign(n, 0);
  open_arcs_.assign(n, 0);
  open_weight_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& arc : instance.arcs(static_cast<ActivityId>(i))) {
      ++open_arcs_[i];
      open_weight_[i] += arc.weight;
    }
  }
  watchers_.resize(n);
}

Propagation Store::assign(ActivityId i, TimeSlot value) {
  auto& v = vars_[idx(i)];
  softsched::assign(v, value, trail_);
  trail_.add_to_counter(assigned_count_, 1);

  const auto& act = instance_->activity(i);
  for (const auto& m : instance_->memberships(i)) {
    const auto& res = instance_->resources()[m.resource];
    for (TimeSlot t = value; t < value + act.duration; ++t) {
      if (res.covers(t))
        trail_.add_to_counter(occupancy_[m.resource][static_cast<std::size_t>(t - res.t_min)],
                              static_cast<std::uint64_t>(m.demand));
    }
  }
  for (const auto& arc : instance_->arcs(i)) {
    trail_.subtract_from_counter(open_arcs_[idx(arc.neighbor)], 1);
    trail_.subtract_from_counter(open_weight_[idx(arc.neighbor)], arc.weight);
  }

  for (Propagator* p : watchers_[idx(i)]) {
    if (p->on_instantiate(*this, i) == Propagation::kFailure) return Propagation::kFailure;
  }
  return Propagation::kConsistent;
}

std::uint64_t Store::occupancy(std::size_t r, TimeSlot t) const {
  const auto& res = instance_->resources()[r];
  if (!res.covers(t)) return 0;
  return occupancy_[r][static_cast<std::size_t>(t - res.t_min)];
}

Penalty Store::assigned_cost() const {
  Penalty total = 0;
  for (const auto& v : vars_)
    if (v.is_assigned()) total = checked_add(total, v.penalty(*v.assigned()));
  return total;
}

Assignment Store::assignment() const {
  Assignment out;
  out.reserve(vars_.size());
  for (const auto& v : vars_) {
    if (!v.is_assigned()) throw ContractViolation("assignment: not every activity is assigned");
    out.push_back(*v.assigned());
  }
  return out;
}

bool Store::same_state(const Store& other) const {
  return vars_ == other.vars_ && occupancy_ == other.occupancy_ && incident_ == other.incident_ &&
         open_arcs_ == other.open_arcs_ && open_weight_ == other.open_weight_ &&
         assigned_count_ == other.assigned_count_;
}

}  // namespace softsched
