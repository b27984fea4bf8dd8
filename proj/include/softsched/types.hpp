#ifndef SOFTSCHED_TYPES_HPP
#define SOFTSCHED_TYPES_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace softsched {

/// Discrete time unit on the dense grid 0 .. horizon-1.
using TimeSlot = std::int32_t;

/// Accumulated preference weight. Zero means fully preferred.
using Penalty = std::uint64_t;

/// Dense activity index, 0 .. n-1.
using ActivityId = std::int32_t;

/// Exact rational used by the fuzzy objective and the resource bounds.
using Rational = boost::rational<std::int64_t>;

inline constexpr Penalty kInfinitePenalty = std::numeric_limits<Penalty>::max();

/// Thrown when a penalty sum would wrap around.
class PenaltyOverflow : public std::overflow_error {
 public:
  PenaltyOverflow() : std::overflow_error("penalty overflow") {}
};

inline Penalty checked_add(Penalty a, Penalty b) {
  if (a > kInfinitePenalty - b) throw PenaltyOverflow();
  return a + b;
}

/// Thrown when an operation is called outside its precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Converts a rational to double for reporting only; comparisons stay exact.
inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace softsched

#endif  // SOFTSCHED_TYPES_HPP
