#include "softsched/instance.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace softsched {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "syntax";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kDanglingId: return "dangling-id";
    case ErrorCode::kDomainHorizon: return "domain-horizon";
    case ErrorCode::kInvalidValue: return "invalid-value";
  }
  return "unknown";
}

InstanceError::InstanceError(ErrorCode code, std::string where, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + " error at " + where + ": " + message),
      code_(code),
      where_(std::move(where)) {}

namespace {

std::string at(const std::string& section, std::size_t index) {
  return "/" + section + "/" + std::to_string(index);
}

}  // namespace

Instance::Instance(TimeSlot horizon, std::vector<ActivitySpec> activities,
                   std::vector<SoftPair> pairs, std::vector<Resource> resources)
    : horizon_(horizon) {
  if (horizon < 1) throw InstanceError(ErrorCode::kInvalidValue, "/horizon", "horizon must be >= 1");

  const auto n = activities.size();
  std::vector<int> seen(n, -1);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& a = activities[k];
    if (a.id < 0 || static_cast<std::size_t>(a.id) >= n)
      throw InstanceError(ErrorCode::kSchema, at("activities", k) + "/id",
                          "activity ids must be dense 0.." + std::to_string(n ? n - 1 : 0));
    if (seen[static_cast<std::size_t>(a.id)] >= 0)
      throw InstanceError(ErrorCode::kInvalidValue, at("activities", k) + "/id",
                          "duplicate activity id " + std::to_string(a.id));
    seen[static_cast<std::size_t>(a.id)] = static_cast<int>(k);
    if (a.duration < 1)
      throw InstanceError(ErrorCode::kInvalidValue, at("activities", k) + "/duration", "duration must be >= 1");
    if (a.domain.empty())
      throw InstanceError(ErrorCode::kInvalidValue, at("activities", k) + "/domain", "empty domain");
    std::set<TimeSlot> slots;
    for (std::size_t v = 0; v < a.domain.size(); ++v) {
      const auto s = a.domain[v].slot;
      const auto where = at("activities", k) + "/domain/" + std::to_string(v);
      if (s < 0 || static_cast<std::int64_t>(s) + a.duration > horizon)
        throw InstanceError(ErrorCode::kDomainHorizon, where,
                            "start " + std::to_string(s) + " with duration " + std::to_string(a.duration) +
                                " does not fit horizon " + std::to_string(horizon));
      if (!slots.insert(s).second)
        throw InstanceError(ErrorCode::kInvalidValue, where, "duplicate start " + std::to_string(s));
    }
  }
  activities_.resize(n);
  for (auto& a : activities) {
    std::sort(a.domain.begin(), a.domain.end(),
              [](const DomainEntry& x, const DomainEntry& y) { return x.slot < y.slot; });
    activities_[static_cast<std::size_t>(a.id)] = std::move(a);
  }

  std::map<std::pair<ActivityId, ActivityId>, Penalty> weights;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& p = pairs[k];
    const auto where = at("soft_disjunctive", k);
    if (p.a < 0 || static_cast<std::size_t>(p.a) >= n)
      throw InstanceError(ErrorCode::kDanglingId, where + "/a", "unknown activity " + std::to_string(p.a));
    if (p.b < 0 || static_cast<std::size_t>(p.b) >= n)
      throw InstanceError(ErrorCode::kDanglingId, where + "/b", "unknown activity " + std::to_string(p.b));
    if (p.a == p.b) throw InstanceError(ErrorCode::kInvalidValue, where, "pair of an activity with itself");
    if (p.weight < 1) throw InstanceError(ErrorCode::kInvalidValue, where + "/weight", "weight must be >= 1");
    auto& w = weights[{std::min(p.a, p.b), std::max(p.a, p.b)}];
    w = checked_add(w, p.weight);
  }
  arcs_.resize(n);
  for (const auto& [key, w] : weights) {
    pairs_.push_back({key.first, key.second, w});
    arcs_[static_cast<std::size_t>(key.first)].push_back({key.second, w});
    arcs_[static_cast<std::size_t>(key.second)].push_back({key.first, w});
    total_weight_ = checked_add(total_weight_, w);
  }

  memberships_.resize(n);
  for (std::size_t r = 0; r < resources.size(); ++r) {
    const auto& res = resources[r];
    const auto where = at("resources", r);
    if (res.t_min < 0 || res.t_max >= horizon || res.t_min > res.t_max)
      throw InstanceError(ErrorCode::kDomainHorizon, where,
                          "window [" + std::to_string(res.t_min) + ", " + std::to_string(res.t_max) +
                              "] outside horizon");
    const auto width = res.width();
    if (res.cap_min.size() != width || res.cap_max.size() != width || res.cap_exp.size() != width)
      throw InstanceError(ErrorCode::kSchema, where, "capacity arrays must have t_max - t_min + 1 entries");
    for (std::size_t t = 0; t < width; ++t) {
      if (res.cap_min[t] > res.cap_exp[t] || res.cap_exp[t] > res.cap_max[t])
        throw InstanceError(ErrorCode::kInvalidValue, where + "/cap_exp/" + std::to_string(t),
                            "need cap_min <= cap_exp <= cap_max");
    }
    std::set<ActivityId> members;
    for (std::size_t k = 0; k < res.members.size(); ++k) {
      const auto& m = res.members[k];
      const auto mwhere = where + "/members/" + std::to_string(k);
      if (m.activity < 0 || static_cast<std::size_t>(m.activity) >= n)
        throw InstanceError(ErrorCode::kDanglingId, mwhere, "unknown activity " + std::to_string(m.activity));
      if (m.demand < 1) throw InstanceError(ErrorCode::kInvalidValue, mwhere, "demand must be >= 1");
      if (!members.insert(m.activity).second)
        throw InstanceError(ErrorCode::kInvalidValue, mwhere, "duplicate member " + std::to_string(m.activity));
      memberships_[static_cast<std::size_t>(m.activity)].push_back({r, m.demand});
    }
  }
  resources_ = std::move(resources);
}

}  // namespace softsched
