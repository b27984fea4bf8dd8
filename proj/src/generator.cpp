#include "softsched/generator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace softsched {

namespace {

// std distributions are not specified bit-for-bit across standard libraries;
// these helpers only rely on the engine output, which is.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t k = v.size(); k > 1; --k) std::swap(v[k - 1], v[below(k)]);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

Instance generate(const GeneratorParams& p) {
  if (p.courses < 1) throw std::invalid_argument("need at least one course");
  if (p.rooms < 1) throw std::invalid_argument("need at least one room");
  if (!(p.occupancy_target > 0.0 && p.occupancy_target <= 1.0))
    throw std::invalid_argument("occupancy target must be in (0, 1]");
  if (p.max_duration < 1) throw std::invalid_argument("max duration must be >= 1");
  if (p.preferred_fraction < 0.0 || p.preferred_fraction > 1.0)
    throw std::invalid_argument("preferred fraction must be in [0, 1]");

  Rng rng(p.seed);
  const auto n = static_cast<std::size_t>(p.courses);

  std::vector<int> duration(n);
  std::uint64_t course_slots = 0;
  for (auto& d : duration) {
    d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(p.max_duration)));
    course_slots += static_cast<std::uint64_t>(d);
  }
  TimeSlot horizon = 0;
  if (p.horizon) {
    horizon = *p.horizon;
  } else {
    horizon = static_cast<TimeSlot>(
        std::ceil(static_cast<double>(course_slots) / (static_cast<double>(p.rooms) * p.occupancy_target) - 1e-9));
  }
  horizon = std::max(horizon, static_cast<TimeSlot>(p.max_duration));
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (course_slots > static_cast<std::uint64_t>(p.rooms) * static_cast<std::uint64_t>(horizon))
    throw std::invalid_argument("infeasible occupancy: " + std::to_string(course_slots) + " course slots exceed " +
                                std::to_string(p.rooms) + " rooms x " + std::to_string(horizon) + " slots");

  std::vector<std::size_t> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  rng.shuffle(rank);
  std::vector<double> popularity(n);
  for (std::size_t c = 0; c < n; ++c)
    popularity[c] = 1.0 / std::pow(static_cast<double>(rank[c] + 1), p.popularity_exponent);

  const std::uint32_t students = p.students ? p.students : 12 * p.courses;
  const std::size_t k = std::min<std::size_t>(p.courses_per_student, n);
  std::vector<std::uint64_t> enrollment(n, 0);
  std::map<std::pair<ActivityId, ActivityId>, Penalty> joint;
  std::vector<double> weight;
  std::vector<ActivityId> chosen;
  for (std::uint32_t s = 0; s < students; ++s) {
    weight = popularity;
    chosen.clear();
    double total = std::accumulate(weight.begin(), weight.end(), 0.0);
    for (std::size_t pick = 0; pick < k; ++pick) {
      double x = rng.uniform01() * total;
      std::size_t c = n;
      std::size_t last = n;
      for (std::size_t q = 0; q < n; ++q) {
        if (weight[q] <= 0.0) continue;
        last = q;
        if (x < weight[q]) {
          c = q;
          break;
        }
        x -= weight[q];
      }
      if (c == n) c = last;  // rounding at the tail
      total -= weight[c];
      weight[c] = 0.0;
      chosen.push_back(static_cast<ActivityId>(c));
    }
    std::sort(chosen.begin(), chosen.end());
    for (std::size_t x = 0; x < chosen.size(); ++x) {
      ++enrollment[static_cast<std::size_t>(chosen[x])];
      for (std::size_t y = x + 1; y < chosen.size(); ++y) ++joint[{chosen[x], chosen[y]}];
    }
  }

  std::vector<ActivitySpec> activities(n);
  for (std::size_t c = 0; c < n; ++c) {
    auto& a = activities[c];
    a.id = static_cast<ActivityId>(c);
    a.duration = duration[c];
    a.enrollment = enrollment[c];
    for (TimeSlot s = 0; s + a.duration <= horizon; ++s) {
      Penalty cost = 0;
      if (rng.uniform01() >= p.preferred_fraction && p.max_initial_cost > 0) cost = 1 + rng.below(p.max_initial_cost);
      a.domain.push_back({s, cost});
    }
  }

  std::vector<SoftPair> pairs;
  for (const auto& [key, w] : joint) pairs.push_back({key.first, key.second, w});

  Resource rooms;
  rooms.name = "rooms";
  for (std::size_t c = 0; c < n; ++c) rooms.members.push_back({static_cast<ActivityId>(c), 1});
  rooms.t_min = 0;
  rooms.t_max = horizon - 1;
  const auto width = static_cast<std::size_t>(horizon);
  rooms.cap_min.assign(width, 0);
  rooms.cap_max.assign(width, p.rooms);
  rooms.cap_exp.assign(width, static_cast<std::uint64_t>(std::llround(p.occupancy_target * p.rooms)));

  return Instance(horizon, std::move(activities), std::move(pairs), {std::move(rooms)});
}

}  // namespace softsched
