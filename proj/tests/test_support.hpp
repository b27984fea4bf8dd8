#ifndef SOFTSCHED_TESTS_TEST_SUPPORT_HPP
#define SOFTSCHED_TESTS_TEST_SUPPORT_HPP

// Small-instance builders, the seeded random corpus and brute-force helpers
// shared by the unit and acceptance suites. Nothing here calls into the
// evaluators under test.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "softsched/instance.hpp"

namespace softsched::testing {

/// Activity whose domain is every start in [0, horizon - duration] at cost 0.
inline ActivitySpec open_activity(ActivityId id, TimeSlot horizon, int duration = 1, std::uint64_t enrollment = 1) {
  ActivitySpec a{id, duration, enrollment, {}};
  for (TimeSlot s = 0; s + duration <= horizon; ++s) a.domain.push_back({s, 0});
  return a;
}

inline Resource uniform_resource(std::vector<ActivityId> members, TimeSlot t_min, TimeSlot t_max,
                                 std::uint64_t cap_min, std::uint64_t cap_max, std::uint64_t cap_exp) {
  Resource r;
  r.name = "r";
  for (auto a : members) r.members.push_back({a, 1});
  r.t_min = t_min;
  r.t_max = t_max;
  const auto w = static_cast<std::size_t>(t_max - t_min + 1);
  r.cap_min.assign(w, cap_min);
  r.cap_max.assign(w, cap_max);
  r.cap_exp.assign(w, cap_exp);
  return r;
}

/// Slots occupied by [s, s + d), as a set; the overlap oracle for tests.
inline std::set<TimeSlot> occupied(TimeSlot s, int d) {
  std::set<TimeSlot> out;
  for (int k = 0; k < d; ++k) out.insert(s + k);
  return out;
}

inline bool intersect(TimeSlot s1, int d1, TimeSlot s2, int d2) {
  const auto a = occupied(s1, d1);
  for (auto t : occupied(s2, d2))
    if (a.count(t)) return true;
  return false;
}

/// Independent cost of a complete assignment: initial costs plus the weight
/// of every overlapping pair, computed by slot-set intersection.
inline Penalty brute_cost(const Instance& inst, const Assignment& theta) {
  Penalty cost = 0;
  for (std::size_t i = 0; i < inst.size(); ++i)
    for (const auto& e : inst.activities()[i].domain)
      if (e.slot == theta[i]) cost += e.cost;
  for (const auto& p : inst.pairs())
    if (intersect(theta[static_cast<std::size_t>(p.a)], inst.activity(p.a).duration,
                  theta[static_cast<std::size_t>(p.b)], inst.activity(p.b).duration))
      cost += p.weight;
  return cost;
}

struct CorpusParams {
  int min_activities = 3;
  int max_activities = 6;
  int max_horizon = 8;
  int max_duration = 3;
  int max_domain = 5;
  int max_resources = 2;
};

/// Seeded random instance from the acceptance corpus: 3-6 activities,
/// horizon <= 8, durations 1-3, up to 2 resources with random windows,
/// capacities and occasional demand 2.
inline Instance random_instance(std::uint64_t seed, const CorpusParams& cp = {}) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };

  const int n = pick(cp.min_activities, cp.max_activities);
  const TimeSlot horizon = pick(3, cp.max_horizon);
  std::vector<ActivitySpec> acts;
  for (int i = 0; i < n; ++i) {
    ActivitySpec a;
    a.id = i;
    a.duration = pick(1, std::min(cp.max_duration, static_cast<int>(horizon)));
    a.enrollment = static_cast<std::uint64_t>(pick(0, 40));
    std::vector<TimeSlot> starts;
    for (TimeSlot s = 0; s + a.duration <= horizon; ++s) starts.push_back(s);
    std::shuffle(starts.begin(), starts.end(), rng);
    const auto keep = static_cast<std::size_t>(pick(1, std::min<int>(cp.max_domain, static_cast<int>(starts.size()))));
    for (std::size_t k = 0; k < keep; ++k) a.domain.push_back({starts[k], static_cast<Penalty>(pick(0, 4))});
    acts.push_back(std::move(a));
  }
  std::vector<SoftPair> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (pick(0, 9) < 6) pairs.push_back({i, j, static_cast<Penalty>(pick(1, 4))});

  std::vector<Resource> resources;
  const int nres = pick(0, cp.max_resources);
  for (int r = 0; r < nres; ++r) {
    Resource res;
    res.name = "r" + std::to_string(r);
    for (int i = 0; i < n; ++i)
      if (pick(0, 3) > 0) res.members.push_back({i, pick(0, 5) == 0 ? 2 : 1});
    res.t_min = pick(0, horizon - 1);
    res.t_max = pick(res.t_min, horizon - 1);
    for (TimeSlot t = res.t_min; t <= res.t_max; ++t) {
      const auto cmax = static_cast<std::uint64_t>(pick(1, 3));
      const auto cmin = static_cast<std::uint64_t>(pick(0, 3) == 0 ? pick(0, 1) : 0);
      const auto lo = std::min(cmin, cmax);
      res.cap_min.push_back(lo);
      res.cap_max.push_back(cmax);
      res.cap_exp.push_back(lo + static_cast<std::uint64_t>(pick(0, static_cast<int>(cmax - lo))));
    }
    resources.push_back(std::move(res));
  }
  return Instance(horizon, std::move(acts), std::move(pairs), std::move(resources));
}

}  // namespace softsched::testing

#endif  // SOFTSCHED_TESTS_TEST_SUPPORT_HPP
