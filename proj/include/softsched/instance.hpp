#ifndef SOFTSCHED_INSTANCE_HPP
#define SOFTSCHED_INSTANCE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "softsched/types.hpp"

namespace softsched {

enum class ErrorCode : int {
  kSyntax = 10,
  kSchema = 11,
  kDanglingId = 12,
  kDomainHorizon = 13,
  kInvalidValue = 14,
};

const char* error_code_name(ErrorCode code);

/// Malformed instance. `where` locates the offending field, e.g.
/// "/activities/2/domain/0" or "line 4, column 7".
class InstanceError : public std::runtime_error {
 public:
  InstanceError(ErrorCode code, std::string where, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  const std::string& where() const noexcept { return where_; }

 private:
  ErrorCode code_;
  std::string where_;
};

struct DomainEntry {
  TimeSlot slot = 0;
  Penalty cost = 0;

  friend bool operator==(const DomainEntry&, const DomainEntry&) = default;
};

struct ActivitySpec {
  ActivityId id = 0;
  int duration = 1;
  std::uint64_t enrollment = 0;
  std::vector<DomainEntry> domain;

  friend bool operator==(const ActivitySpec&, const ActivitySpec&) = default;
};

/// Weighted non-overlap preference between two activities (a < b after
/// normalization).
struct SoftPair {
  ActivityId a = 0;
  ActivityId b = 0;
  Penalty weight = 1;

  friend bool operator==(const SoftPair&, const SoftPair&) = default;
};

struct ResourceMember {
  ActivityId activity = 0;
  int demand = 1;

  friend bool operator==(const ResourceMember&, const ResourceMember&) = default;
};

/// Discrete-capacity resource over the inclusive window [t_min, t_max].
/// Capacity arrays are indexed by t - t_min.
struct Resource {
  std::string name;
  std::vector<ResourceMember> members;
  TimeSlot t_min = 0;
  TimeSlot t_max = 0;
  std::vector<std::uint64_t> cap_min;
  std::vector<std::uint64_t> cap_max;
  std::vector<std::uint64_t> cap_exp;

  std::size_t width() const { return static_cast<std::size_t>(t_max - t_min + 1); }
  bool covers(TimeSlot t) const { return t >= t_min && t <= t_max; }

  friend bool operator==(const Resource&, const Resource&) = default;
};

/// One direction of a soft pair as seen from an activity.
struct Arc {
  ActivityId neighbor = 0;
  Penalty weight = 0;
};

struct Membership {
  std::size_t resource = 0;
  int demand = 1;
};

/// Immutable, validated problem data. Safe to share between searches.
class Instance {
 public:
  Instance() = default;

  /// Validates everything and aggregates duplicate soft pairs by summing
  /// their weights. Throws InstanceError.
  Instance(TimeSlot horizon, std::vector<ActivitySpec> activities,
           std::vector<SoftPair> pairs, std::vector<Resource> resources);

  TimeSlot horizon() const { return horizon_; }
  std::size_t size() const { return activities_.size(); }
  const std::vector<ActivitySpec>& activities() const { return activities_; }
  const ActivitySpec& activity(ActivityId i) const { return activities_[static_cast<std::size_t>(i)]; }
  const std::vector<SoftPair>& pairs() const { return pairs_; }
  const std::vector<Resource>& resources() const { return resources_; }
  const std::vector<Arc>& arcs(ActivityId i) const { return arcs_[static_cast<std::size_t>(i)]; }
  const std::vector<Membership>& memberships(ActivityId i) const {
    return memberships_[static_cast<std::size_t>(i)];
  }

  /// Sum of all pair weights: the number of unit soft requirements.
  Penalty total_weight() const { return total_weight_; }

  friend bool operator==(const Instance& x, const Instance& y) {
    return x.horizon_ == y.horizon_ && x.activities_ == y.activities_ && x.pairs_ == y.pairs_ &&
           x.resources_ == y.resources_;
  }

 private:
  TimeSlot horizon_ = 0;
  std::vector<ActivitySpec> activities_;
  std::vector<SoftPair> pairs_;
  std::vector<Resource> resources_;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<std::vector<Membership>> memberships_;
  Penalty total_weight_ = 0;
};

/// A complete or partial start-time assignment, indexed by activity.
using Assignment = std::vector<TimeSlot>;

}  // namespace softsched

#endif  // SOFTSCHED_INSTANCE_HPP
