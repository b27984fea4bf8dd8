#include "softsched/softdisj.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "softsched/search.hpp"
#include "test_support.hpp"

namespace softsched {
namespace {

using testing::open_activity;

TEST(Overlaps, HalfOpenIntervals) {
  EXPECT_TRUE(overlaps(0, 2, 1, 2));
  EXPECT_FALSE(overlaps(0, 2, 2, 2));
  EXPECT_TRUE(overlaps(3, 1, 3, 1));
}

TEST(Overlaps, MatchesSlotSetsAndIsSymmetric) {
  for (TimeSlot s1 = 0; s1 < 6; ++s1)
    for (TimeSlot s2 = 0; s2 < 6; ++s2)
      for (int d1 = 1; d1 <= 3; ++d1)
        for (int d2 = 1; d2 <= 3; ++d2) {
          EXPECT_EQ(overlaps(s1, d1, s2, d2), testing::intersect(s1, d1, s2, d2));
          EXPECT_EQ(overlaps(s1, d1, s2, d2), overlaps(s2, d2, s1, d1));
        }
}

// Activity 0 (duration 2) fixed at slot 2; activity 1 (duration 1) open on 0..4.
Instance two_activity_instance() {
  return Instance(5, {open_activity(0, 5, 2), open_activity(1, 5, 1)}, {{0, 1, 5}}, {});
}

TEST(PostSoftDisjunctive, ValidatesNeighbors) {
  const Instance inst(4, {open_activity(0, 4), open_activity(1, 4), open_activity(2, 4)}, {}, {});
  Store store(inst);
  auto& c = post_soft_disjunctive(store, 0, {{1, 5}, {2, 2}});
  EXPECT_EQ(c.arcs().size(), 2u);
  EXPECT_EQ(store.subscriptions(0), 1u);
  EXPECT_EQ(store.subscriptions(1), 1u);
  auto& inert = post_soft_disjunctive(store, 1, {});
  EXPECT_TRUE(inert.arcs().empty());
  EXPECT_THROW(post_soft_disjunctive(store, 0, {{0, 1}}), PostingError);
  EXPECT_THROW(post_soft_disjunctive(store, 0, {{1, 1}, {1, 2}}), PostingError);
  EXPECT_THROW(post_soft_disjunctive(store, 0, {{1, 0}}), PostingError);
  EXPECT_THROW(post_soft_disjunctive(store, 0, {{7, 1}}), PostingError);
}

TEST(PropagateInstantiation, AddsWeightToOverlappingValues) {
  const auto inst = two_activity_instance();
  Store store(inst);
  post_soft_disjunctives(store);
  ASSERT_EQ(store.assign(0, 2), Propagation::kConsistent);
  // Expected penalties by slot-set intersection of [2,4) with [u,u+1).
  std::vector<Penalty> expected;
  for (TimeSlot u = 0; u < 5; ++u) expected.push_back(testing::intersect(2, 2, u, 1) ? 5 : 0);
  ASSERT_EQ(expected, (std::vector<Penalty>{0, 0, 5, 5, 0}));
  for (TimeSlot u = 0; u < 5; ++u) EXPECT_EQ(store.var(1).penalty(u), expected[static_cast<std::size_t>(u)]);
}

TEST(PropagateInstantiation, ThresholdRemovesExceedingValues) {
  const auto inst = two_activity_instance();
  Store store(inst);
  post_soft_disjunctives(store, Penalty{4});
  ASSERT_EQ(store.assign(0, 2), Propagation::kConsistent);
  EXPECT_EQ(store.var(1).values(), (std::vector<TimeSlot>{0, 1, 4}));
}

TEST(PropagateInstantiation, ThresholdIgnoresInitialCost) {
  auto a1 = open_activity(1, 5, 1);
  for (auto& e : a1.domain) e.cost = 10;
  const Instance inst(5, {open_activity(0, 5, 2), a1}, {{0, 1, 5}}, {});
  Store store(inst);
  post_soft_disjunctives(store, Penalty{5});
  ASSERT_EQ(store.assign(0, 2), Propagation::kConsistent);
  EXPECT_EQ(store.var(1).size(), 5u);
  EXPECT_EQ(store.var(1).penalty(2), 15u);
}

TEST(PropagateInstantiation, WipeoutFails) {
  const Instance inst(2, {ActivitySpec{0, 1, 1, {{0, 0}}}, ActivitySpec{1, 1, 1, {{0, 0}}}}, {{0, 1, 3}}, {});
  Store store(inst);
  post_soft_disjunctives(store, Penalty{2});
  EXPECT_EQ(store.assign(0, 0), Propagation::kFailure);
}

TEST(PropagateInstantiation, DisjointAssignedNeighborIsUntouched) {
  const auto inst = two_activity_instance();
  Store store(inst);
  post_soft_disjunctives(store);
  ASSERT_EQ(store.assign(1, 0), Propagation::kConsistent);
  const auto mark = store.mark();
  ASSERT_EQ(store.assign(0, 2), Propagation::kConsistent);
  EXPECT_EQ(store.incident_violation(0), 0u);
  EXPECT_EQ(store.incident_violation(1), 0u);
  EXPECT_EQ(store.var(1).penalty(0), 0u);
  // Only the assignment itself was recorded.
  EXPECT_GT(store.mark(), mark);
}

TEST(Evaluators, WeightedCountsEachPairOnce) {
  const Instance two(1, {open_activity(0, 1), open_activity(1, 1)}, {{0, 1, 3}}, {});
  EXPECT_EQ(eval_weighted(two, Assignment{0, 0}), 3u);
  const Instance three(1, {open_activity(0, 1), open_activity(1, 1), open_activity(2, 1)},
                       {{0, 1, 1}, {0, 2, 2}, {1, 2, 4}}, {});
  EXPECT_EQ(eval_weighted(three, Assignment{0, 0, 0}), 1u + 2u + 4u);
  const Instance spread(3, {open_activity(0, 3), open_activity(1, 3), open_activity(2, 3)},
                        {{0, 1, 1}, {0, 2, 2}, {1, 2, 4}}, {});
  EXPECT_EQ(eval_weighted(spread, Assignment{0, 1, 2}), 0u);
  EXPECT_THROW(eval_weighted(three, Assignment{0, 0}), ContractViolation);
}

TEST(Evaluators, IncidentViolation) {
  const Instance three(1, {open_activity(0, 1), open_activity(1, 1), open_activity(2, 1)},
                       {{0, 1, 1}, {0, 2, 2}, {1, 2, 4}}, {});
  EXPECT_EQ(eval_u(three, Assignment{0, 0, 0}, 0), 3u);
  const Instance spread(3, {open_activity(0, 3), open_activity(1, 3), open_activity(2, 3)},
                        {{0, 1, 1}, {0, 2, 2}, {1, 2, 4}}, {});
  for (ActivityId i = 0; i < 3; ++i) EXPECT_EQ(eval_u(spread, Assignment{0, 1, 2}, i), 0u);
  const Instance two(1, {open_activity(0, 1), open_activity(1, 1)}, {{0, 1, 3}}, {});
  EXPECT_EQ(eval_u(two, Assignment{0, 0}, 0), 3u);
  EXPECT_EQ(eval_u(two, Assignment{0, 0}, 1), 3u);
}

TEST(Evaluators, Fuzzy) {
  const Instance two(2, {open_activity(0, 2), open_activity(1, 2)}, {{0, 1, 1}}, {});
  EXPECT_EQ(eval_fuzzy(two, Assignment{0, 0}), Rational(0));
  EXPECT_EQ(eval_fuzzy(two, Assignment{0, 1}), Rational(1));
  const Instance three(1, {open_activity(0, 1), open_activity(1, 1), open_activity(2, 1)},
                       {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}}, {});
  // u = 2 for each activity, m (n - 1) = 3 * 2.
  EXPECT_EQ(eval_fuzzy(three, Assignment{0, 0, 0}), Rational(1) - Rational(2, 6));
  EXPECT_EQ(eval_fuzzy(three, Assignment{0, 0, 0}), Rational(2, 3));

  const Instance lone(1, {open_activity(0, 1)}, {}, {});
  EXPECT_THROW(eval_fuzzy(lone, Assignment{0}), ContractViolation);
  const Instance unconstrained(1, {open_activity(0, 1), open_activity(1, 1)}, {}, {});
  EXPECT_THROW(eval_fuzzy(unconstrained, Assignment{0, 0}), ContractViolation);
}

TEST(Evaluators, FuzzyStaysInUnitIntervalWithHeavyWeights) {
  const Instance heavy(1, {open_activity(0, 1), open_activity(1, 1)}, {{0, 1, 9}}, {});
  EXPECT_EQ(eval_fuzzy(heavy, Assignment{0, 0}), Rational(0));
}

TEST(Evaluators, Ratio) {
  auto a0 = open_activity(0, 1, 1, 30);
  auto a1 = open_activity(1, 1, 1, 0);
  auto a2 = open_activity(2, 2, 1, 5);
  const Instance inst(2, {a0, a1, a2}, {{0, 1, 3}}, {});
  EXPECT_EQ(eval_ratio(inst, Assignment{0, 0, 1}, 0), Rational(1, 10));
  EXPECT_EQ(eval_ratio(inst, Assignment{0, 0, 1}, 2), Rational(0));
  EXPECT_THROW(eval_ratio(inst, Assignment{0, 0, 1}, 1), ContractViolation);
}

// Decomposition and range properties on random complete assignments.
TEST(Evaluators, DecompositionProperties) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto inst = testing::random_instance(seed);
    std::mt19937_64 rng(seed);
    Assignment theta;
    for (const auto& a : inst.activities()) theta.push_back(a.domain[rng() % a.domain.size()].slot);
    const auto u = eval_u_all(inst, theta);
    const Penalty sum = std::accumulate(u.begin(), u.end(), Penalty{0});
    EXPECT_EQ(2 * eval_weighted(inst, theta), sum);
    EXPECT_EQ(eval_total(inst, theta), testing::brute_cost(inst, theta));
    if (fuzzy_defined(inst)) {
      const auto f = eval_fuzzy(inst, theta);
      EXPECT_GE(f, Rational(0));
      EXPECT_LE(f, Rational(1));
    }
  }
}

// Fixing the activities one by one in any order leaves, at each assigned
// value, penalties that sum to the total cost of the final assignment.
TEST(PropagationSum, IdentityHoldsForEveryOrder) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = testing::random_instance(seed);
    std::mt19937_64 rng(seed + 17);
    Assignment theta;
    for (const auto& a : inst.activities()) theta.push_back(a.domain[rng() % a.domain.size()].slot);
    const auto expected = testing::brute_cost(inst, theta);

    std::vector<ActivityId> order(inst.size());
    std::iota(order.begin(), order.end(), 0);
    for (int round = 0; round < 4; ++round) {
      std::shuffle(order.begin(), order.end(), rng);
      Store store(inst);
      post_soft_disjunctives(store);
      for (auto i : order) ASSERT_EQ(store.assign(i, theta[static_cast<std::size_t>(i)]), Propagation::kConsistent);
      EXPECT_EQ(store.assigned_cost(), expected) << "seed " << seed;
      for (std::size_t i = 0; i < inst.size(); ++i)
        EXPECT_EQ(store.incident_violation(static_cast<ActivityId>(i)), eval_u(inst, theta, static_cast<ActivityId>(i)));
    }
  }
}

// After propagation under a threshold, every live value of an open variable
// has violation share <= u_max, and a removed value could not have been part
// of a completion whose incident violation stays within the threshold.
TEST(Threshold, SoundFiltering) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = testing::random_instance(seed);
    const Penalty u_max = seed % 4;
    std::mt19937_64 rng(seed + 3);
    Store store(inst);
    post_soft_disjunctives(store, u_max);
    std::vector<ActivityId> order(inst.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const std::size_t fixed = 1 + rng() % (inst.size() - 1);
    bool failed = false;
    for (std::size_t k = 0; k < fixed && !failed; ++k) {
      const auto i = order[k];
      const auto values = store.var(i).values();
      failed = store.assign(i, values[rng() % values.size()]) == Propagation::kFailure;
    }
    if (failed) continue;
    for (std::size_t k = fixed; k < inst.size(); ++k) {
      const auto i = order[k];
      const auto& v = store.var(i);
      v.for_each_value([&](TimeSlot t) { EXPECT_LE(v.violation_share(t), u_max); });
      for (const auto& e : inst.activity(i).domain) {
        if (v.contains(e.slot)) continue;
        // Removed: the violation with already-fixed partners already exceeds u_max.
        Penalty share = 0;
        for (const auto& arc : inst.arcs(i)) {
          const auto& w = store.var(arc.neighbor);
          if (w.is_assigned() && testing::intersect(e.slot, inst.activity(i).duration, *w.assigned(),
                                                    inst.activity(arc.neighbor).duration))
            share += arc.weight;
        }
        EXPECT_GT(share, u_max) << "seed " << seed;
      }
    }
  }
}

}  // namespace
}  // namespace softsched
