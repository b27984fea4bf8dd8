#ifndef SOFTSCHED_GENERATOR_HPP
#define SOFTSCHED_GENERATOR_HPP

#include <cstdint>
#include <optional>

#include "softsched/instance.hpp"

namespace softsched {

/// Synthetic course timetabling instance.
///
/// Students each pick `courses_per_student` distinct courses, sampled by a
/// power-law course popularity (weight 1 / rank^popularity_exponent over a
/// random ranking). Enrollment is the number of students per course and the
/// weight of a soft pair is the number of students taking both courses.
/// One room pool covers the whole horizon with cap_max = rooms, cap_min = 0
/// and cap_exp = round(occupancy_target * rooms). When no horizon is given it
/// is the smallest one whose average room occupancy does not exceed the
/// target.
struct GeneratorParams {
  std::uint32_t courses = 1;
  std::uint32_t rooms = 1;
  double occupancy_target = 0.74;
  std::optional<TimeSlot> horizon;
  std::uint32_t students = 0;  ///< 0 means 12 per course
  std::uint32_t courses_per_student = 4;
  double popularity_exponent = 1.0;
  int max_duration = 2;
  double preferred_fraction = 0.6;  ///< share of starts with initial cost 0
  Penalty max_initial_cost = 5;
  std::uint64_t seed = 1;
};

/// Deterministic for a fixed parameter set. Throws std::invalid_argument on
/// bad parameters or when the course slots cannot fit rooms * horizon.
Instance generate(const GeneratorParams& params);

}  // namespace softsched

#endif  // SOFTSCHED_GENERATOR_HPP
