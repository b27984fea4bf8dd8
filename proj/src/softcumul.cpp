#include "softsched/softcumul.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace softsched {

MinWeightTable MinWeightTable::from_store(const Store& store) {
  MinWeightTable table(store.size());
  for (std::size_t i = 0; i < store.size(); ++i) {
    const auto& v = store.var(static_cast<ActivityId>(i));
    if (!v.is_assigned()) table.set(static_cast<ActivityId>(i), min_penalty(v).second);
  }
  return table;
}

Penalty MinWeightTable::get(ActivityId a) const {
  const auto& w = weight_[idx(a)];
  if (!w) throw ContractViolation("no minimal weight for activity " + std::to_string(a));
  return *w;
}

Penalty base_lower_bound(const MinWeightTable& table, std::span<const ActivityId> scope) {
  Penalty total = 0;
  for (const auto a : scope) total = checked_add(total, table.get(a));
  return total;
}

std::optional<Penalty> delta(TimeSlot t, ActivityId a, const Store& store, const MinWeightTable& table) {
  const auto& var = store.var(a);
  const int d = store.instance().activity(a).duration;
  const TimeSlot lo = std::max(var.grid_lower(), t - d + 1);
  const TimeSlot hi = std::min(var.grid_upper(), t);
  std::optional<Penalty> best;
  for (TimeSlot s = lo; s <= hi; ++s) {
    if (!var.contains(s)) continue;
    const auto p = var.penalty(s);
    if (!best || p < *best) best = p;
  }
  if (!best) return std::nullopt;
  if (table.charged(a)) return Penalty{0};
  const auto m = table.get(a);
  return *best > m ? *best - m : Penalty{0};
}

std::vector<UnitView> unit_capacity_expand(const Instance& instance, ActivityId a, int k) {
  if (k < 1) throw ContractViolation("required capacity must be >= 1");
  std::vector<UnitView> views;
  views.reserve(static_cast<std::size_t>(k));
  for (int u = 0; u < k; ++u) views.push_back({a, u, instance.activity(a).duration, k});
  return views;
}

namespace {

// Units of open members whose every live start keeps them running at t.
std::uint64_t compulsory_units(const Store& store, const Resource& res, TimeSlot t) {
  std::uint64_t units = 0;
  for (const auto& m : res.members) {
    const auto& var = store.var(m.activity);
    if (var.is_assigned()) continue;
    const int d = store.instance().activity(m.activity).duration;
    bool always = true;
    var.for_each_value([&](TimeSlot s) { always = always && s <= t && t < s + d; });
    if (always) units += static_cast<std::uint64_t>(m.demand);
  }
  return units;
}

struct Candidate {
  Rational ratio;
  ActivityId activity;
  int unit;
};

}  // namespace

Contribution resource_contribution(std::size_t r, const Store& store, const MinWeightTable& table,
                                   BoundMode mode) {
  const auto& res = store.instance().resources()[r];
  Contribution out;
  std::vector<Candidate> candidates;
  for (TimeSlot t = res.t_min; t <= res.t_max; ++t) {
    const auto k = static_cast<std::size_t>(t - res.t_min);
    const std::uint64_t used = store.occupancy(r, t);
    std::uint64_t required = res.cap_min[k];
    if (mode == BoundMode::kExp)
      required = std::min(res.cap_exp[k], std::max(res.cap_min[k], used + compulsory_units(store, res, t)));
    if (required <= used) continue;
    required -= used;

    candidates.clear();
    for (const auto& m : res.members) {
      if (store.var(m.activity).is_assigned()) continue;
      const auto d = delta(t, m.activity, store, table);
      if (!d) continue;
      for (const auto& view : unit_capacity_expand(store.instance(), m.activity, m.demand))
        candidates.push_back({Rational(static_cast<std::int64_t>(*d),
                                       static_cast<std::int64_t>(view.duration) * view.demand),
                              view.activity, view.unit});
    }
    if (candidates.size() < required) {
      out.feasible = false;
      out.deficit_slot = t;
      return out;
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
      if (x.ratio != y.ratio) return x.ratio < y.ratio;
      if (x.activity != y.activity) return x.activity < y.activity;
      return x.unit < y.unit;
    });
    for (std::size_t c = 0; c < required; ++c) {
      out.value += candidates[c].ratio;
      out.selected.push_back({t, candidates[c].activity, candidates[c].unit, candidates[c].ratio});
    }
  }
  return out;
}

void update_min_weights(std::size_t r, const Contribution& contribution, const Store& store,
                        MinWeightTable& table, MinWeightSharing rule) {
  if (rule == MinWeightSharing::kExclusive) {
    for (const auto& m : store.instance().resources()[r].members)
      if (table.contains(m.activity)) table.mark_charged(m.activity);
    return;
  }
  std::map<ActivityId, Rational> share;
  for (const auto& s : contribution.selected) share[s.activity] += s.ratio;
  for (const auto& [a, total] : share) {
    const auto whole = static_cast<Penalty>(total.numerator() / total.denominator());
    if (whole > 0) table.raise(a, whole);
  }
}

LowerBound node_lower_bound(const Store& store, std::optional<BoundMode> mode, MinWeightSharing rule) {
  auto table = MinWeightTable::from_store(store);
  Penalty base = store.assigned_cost();
  for (std::size_t i = 0; i < store.size(); ++i)
    if (table.contains(static_cast<ActivityId>(i))) base = checked_add(base, table.get(static_cast<ActivityId>(i)));
  LowerBound out{Rational(static_cast<std::int64_t>(base)), true};
  if (!mode) return out;
  for (std::size_t r = 0; r < store.instance().resources().size(); ++r) {
    const auto c = resource_contribution(r, store, table, *mode);
    if (!c.feasible) {
      out.feasible = false;
      return out;
    }
    out.value += c.value;
    update_min_weights(r, c, store, table, rule);
  }
  return out;
}

namespace {

template <typename Lookup>
std::vector<std::uint64_t> occupancy_profile(const Instance& instance, const Resource& res, Lookup&& start_of) {
  std::vector<std::uint64_t> occ(res.width(), 0);
  for (const auto& m : res.members) {
    const std::optional<TimeSlot> s = start_of(m.activity);
    if (!s) continue;
    const int d = instance.activity(m.activity).duration;
    for (TimeSlot t = *s; t < *s + d; ++t)
      if (res.covers(t)) occ[static_cast<std::size_t>(t - res.t_min)] += static_cast<std::uint64_t>(m.demand);
  }
  return occ;
}

std::optional<TimeSlot> first_over(const Resource& res, const std::vector<std::uint64_t>& occ) {
  for (std::size_t k = 0; k < occ.size(); ++k)
    if (occ[k] > res.cap_max[k]) return res.t_min + static_cast<TimeSlot>(k);
  return std::nullopt;
}

}  // namespace

std::optional<TimeSlot> check_cumulative_max(const Instance& instance, std::size_t r,
                                             const PartialAssignment& theta) {
  const auto& res = instance.resources()[r];
  return first_over(res, occupancy_profile(instance, res, [&](ActivityId a) {
                      return theta[static_cast<std::size_t>(a)];
                    }));
}

std::optional<TimeSlot> check_cumulative_max(const Instance& instance, std::size_t r,
                                             std::span<const TimeSlot> theta) {
  const auto& res = instance.resources()[r];
  return first_over(res, occupancy_profile(instance, res, [&](ActivityId a) {
                      return std::optional<TimeSlot>(theta[static_cast<std::size_t>(a)]);
                    }));
}

std::optional<TimeSlot> check_atleast(const Instance& instance, std::size_t r, std::span<const TimeSlot> theta) {
  if (theta.size() != instance.size()) throw ContractViolation("check_atleast needs a complete assignment");
  const auto& res = instance.resources()[r];
  const auto occ = occupancy_profile(instance, res, [&](ActivityId a) {
    return std::optional<TimeSlot>(theta[static_cast<std::size_t>(a)]);
  });
  for (std::size_t k = 0; k < occ.size(); ++k)
    if (occ[k] < res.cap_min[k]) return res.t_min + static_cast<TimeSlot>(k);
  return std::nullopt;
}

bool hard_feasible(const Instance& instance, std::span<const TimeSlot> theta) {
  for (std::size_t r = 0; r < instance.resources().size(); ++r)
    if (check_cumulative_max(instance, r, theta) || check_atleast(instance, r, theta)) return false;
  return true;
}

Propagation CumulativeMax::on_instantiate(Store& store, ActivityId activity) {
  const auto& instance = store.instance();
  const TimeSlot s = *store.var(activity).assigned();
  const int d = instance.activity(activity).duration;
  for (const auto& m : instance.memberships(activity)) {
    const auto& res = instance.resources()[m.resource];
    for (TimeSlot t = std::max(s, res.t_min); t < s + d && t <= res.t_max; ++t)
      if (store.occupancy(m.resource, t) > res.cap_max[static_cast<std::size_t>(t - res.t_min)])
        return Propagation::kFailure;
  }
  return Propagation::kConsistent;
}

void post_cumulative_max(Store& store) {
  if (store.instance().resources().empty()) return;
  auto& c = store.post<CumulativeMax>();
  for (std::size_t i = 0; i < store.size(); ++i)
    if (!store.instance().memberships(static_cast<ActivityId>(i)).empty()) store.subscribe(static_cast<ActivityId>(i), c);
}

}  // namespace softsched
