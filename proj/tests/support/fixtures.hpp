#pragma once

// Hand-computed fixtures shared across the suites. Every expected number here
// was derived on paper from the definitions (Rand distance over unordered
// distinct pairs, partition distance as minimum moves over n-1), so the tests
// below are genuine oracles rather than snapshots of the implementation.

#include <vector>

#include <softcmp/core.hpp>
#include <softcmp/distributional.hpp>

namespace fixtures {

using namespace softcmp;

// Hard pair: {a,b | c} vs {a | b | c}.
//   Rand: pair ab disagrees, ac and bc agree -> distance 1/3.
//   Partition: one move fixes it -> 1 / (3-1) = 0.5.
inline HardClustering hard_ab_c() { return HardClustering(Frame(2), {0, 0, 1}); }
inline HardClustering hard_singletons3() { return HardClustering(Frame(3), {0, 1, 2}); }
inline constexpr double kHardRand = 1.0 / 3.0;
inline constexpr double kHardPartition = 0.5;

// Reference hard clustering used by the soft fixtures: {a,b | c} over 2 clusters.
inline HardClustering reference_hard() { return hard_ab_c(); }
inline SoftClustering reference_soft() { return reference_hard().to_soft(); }

// Rough: a, b pinned to cluster 1, c undecided between both.
// Against reference_hard the two compatible clusterings give
//   c -> 1: {a,b,c} vs {a,b | c}: Rand 2/3, partition 0.5
//   c -> 2: identical: 0
inline RoughClustering rough_c_undecided() {
  return RoughClustering(Frame(2), {0b01, 0b01, 0b11});
}
inline constexpr double kRoughRandHigh = 2.0 / 3.0;
inline constexpr double kRoughPartitionHigh = 0.5;

// Fuzzy: a, b certain of cluster 1, c split 50/50.
// Against reference_hard: d_F = { 0 -> 0.5, 2/3 -> 0.5 }, E = 1/3 (Rand).
inline SoftClustering fuzzy_c_split() {
  std::vector<std::vector<MassFunction::Entry>> raw(3);
  raw[0].emplace_back(0b01, 1.0);
  raw[1].emplace_back(0b01, 1.0);
  raw[2].emplace_back(0b01, 0.5);
  raw[2].emplace_back(0b10, 0.5);
  return validate_soft_clustering(Frame(2), std::move(raw));
}
inline constexpr double kFuzzyExpectation = 1.0 / 3.0;

// Possibilistic: c has contour (0.5, 1.0), i.e. consonant masses
// m({2}) = 0.5, m({1,2}) = 0.5. Against reference_hard:
//   possibility of distance: { 0 -> 1, 2/3 -> 0.5 }
//   consonant joint: value set {0} with mass 0.5, {0, 2/3} with mass 0.5
//   expectation bounds (0, 1/3)
inline SoftClustering possibilistic_c_leaning2() {
  std::vector<std::vector<MassFunction::Entry>> raw(3);
  raw[0].emplace_back(0b01, 1.0);
  raw[1].emplace_back(0b01, 1.0);
  raw[2].emplace_back(0b10, 0.5);
  raw[2].emplace_back(0b11, 0.5);
  return validate_soft_clustering(Frame(2), std::move(raw));
}
inline constexpr double kPossExpectationHigh = 1.0 / 3.0;

// Evidential: a hedges between "cluster 1" and "either", b and c are crisp.
// Against reference_hard:
//   value-set masses: {0} -> 0.6, {0, 2/3} -> 0.4
//   expectation bounds (0, 4/15), attainable range (0, 2/3)
//   pairwise relation masses: (a,b) = (.6, 0, .4), (a,c) = (0, .6, .4), (b,c) = (0, 1, 0)
//   rand_evidential with the half-L1 mass metric: 1 - (0.4 + 0.4 + 0)/3 = 11/15
inline SoftClustering evidential_a_hedging() {
  std::vector<std::vector<MassFunction::Entry>> raw(3);
  raw[0].emplace_back(0b01, 0.6);
  raw[0].emplace_back(0b11, 0.4);
  raw[1].emplace_back(0b01, 1.0);
  raw[2].emplace_back(0b10, 1.0);
  return validate_soft_clustering(Frame(2), std::move(raw));
}
inline constexpr double kEvidExpectationHigh = 4.0 / 15.0;
inline constexpr double kEvidRandHalfL1 = 11.0 / 15.0;

// Non-consonant evidential example (focal sets {1} and {2} cannot nest):
// used where dispatch must take the general route.
inline SoftClustering evidential_conflicted() {
  std::vector<std::vector<MassFunction::Entry>> raw(3);
  raw[0].emplace_back(0b01, 0.5);
  raw[0].emplace_back(0b10, 0.3);
  raw[0].emplace_back(0b11, 0.2);
  raw[1].emplace_back(0b01, 1.0);
  raw[2].emplace_back(0b10, 1.0);
  return validate_soft_clustering(Frame(2), std::move(raw));
}

}  // namespace fixtures
