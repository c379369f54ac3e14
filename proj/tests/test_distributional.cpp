// The distribution-over-hard-clusterings semantics: value sets for rough
// inputs, probability distributions for fuzzy, possibility distributions for
// possibilistic, mass over value sets for evidential, plus expectations,
// intervals, the consonant joint reading, and total compatibility.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <softcmp/distributional.hpp>
#include <softcmp/metrics.hpp>

#include "support/brute.hpp"
#include "support/fixtures.hpp"
#include "support/gen.hpp"

using namespace softcmp;
using Catch::Approx;

namespace {

// locate the weight of a value set given as a plain vector, tolerant compare
double mass_of_value_set(const ValueSetMass& vsm, const std::vector<double>& values) {
  for (const auto& [vs, w] : vsm) {
    if (brute::same_value_set(vs.values(), values)) return w;
  }
  return -1.0;
}

}  // namespace

TEST_CASE("rough value set and interval match the hand computation") {
  const RoughClustering r = fixtures::rough_c_undecided();
  const RoughClustering c = RoughClustering::from_hard(fixtures::reference_hard());

  const ValueSet vsRand = distributional_rough(r, c, BaseMetric::RandDistance);
  REQUIRE(vsRand.size() == 2);
  CHECK(vsRand.values()[0] == Approx(0.0).margin(1e-12));
  CHECK(vsRand.values()[1] == Approx(fixtures::kRoughRandHigh));

  const ValueSet vsPd = distributional_rough(r, c, BaseMetric::PartitionDistance);
  REQUIRE(vsPd.size() == 2);
  CHECK(vsPd.values()[1] == Approx(fixtures::kRoughPartitionHigh));

  const IntervalSummary iv = rough_interval_exact(r, c, BaseMetric::RandDistance);
  CHECK(iv.lower == Approx(0.0).margin(1e-12));
  CHECK(iv.upper == Approx(fixtures::kRoughRandHigh));
}

TEST_CASE("rough value sets agree with naive enumeration on random inputs") {
  gen::Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + gen::below(rng, 5);
    const std::size_t k = 2 + gen::below(rng, 2);
    const RoughClustering r1 = gen::random_rough(rng, n, k);
    const RoughClustering r2 = gen::random_rough(rng, n, k);
    for (auto metric : {BaseMetric::RandDistance, BaseMetric::PartitionDistance}) {
      const ValueSet vs = distributional_rough(r1, r2, metric);
      const std::vector<double> naive =
          brute::rough_value_set(r1.regions, r2.regions, k, k, metric);
      REQUIRE(vs.size() == naive.size());
      for (std::size_t i = 0; i < naive.size(); ++i)
        CHECK(vs.values()[i] == Approx(naive[i]).margin(1e-9));
      const IntervalSummary iv = rough_interval_exact(r1, r2, metric);
      CHECK(iv.lower == Approx(naive.front()).margin(1e-12));
      CHECK(iv.upper == Approx(naive.back()).margin(1e-12));
    }
  }
}

TEST_CASE("fuzzy distribution, expectation, and the closed form") {
  const SoftClustering f = fixtures::fuzzy_c_split();
  const SoftClustering c = fixtures::reference_soft();

  const ValueDistribution d = distributional_fuzzy(f, c, BaseMetric::RandDistance);
  CHECK(d.total_weight() == Approx(1.0));
  CHECK(d.weight_of(0.0) == Approx(0.5));
  CHECK(d.weight_of(2.0 / 3.0) == Approx(0.5));
  CHECK(d.expectation() == Approx(fixtures::kFuzzyExpectation));
  CHECK(fuzzy_rand_expectation_fast(f, c) == Approx(fixtures::kFuzzyExpectation));

  CHECK_THROWS_AS(distributional_fuzzy(fixtures::evidential_a_hedging(), c, BaseMetric::RandDistance),
                  Error);
}

TEST_CASE("fuzzy distribution matches naive enumeration on random inputs") {
  gen::Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + gen::below(rng, 4);
    const std::size_t k = 2 + gen::below(rng, 2);
    const SoftClustering f1 = gen::random_fuzzy(rng, n, k);
    const SoftClustering f2 = gen::random_fuzzy(rng, n, k);
    for (auto metric : {BaseMetric::RandDistance, BaseMetric::PartitionDistance}) {
      const ValueDistribution d = distributional_fuzzy(f1, f2, metric);
      CHECK(d.total_weight() == Approx(1.0));
      // every hard pair lands in exactly one entry, so the naive value sets
      // are singletons and their masses are the per-value probabilities
      const auto naive = brute::evidential_value_sets(f1, f2, metric);
      double naiveE = 0.0;
      for (const auto& e : naive) {
        REQUIRE(e.values.size() == 1);
        CHECK(d.weight_of(e.values[0]) == Approx(e.mass).margin(1e-9));
        naiveE += e.values[0] * e.mass;
      }
      CHECK(d.expectation() == Approx(naiveE).margin(1e-9));
      if (metric == BaseMetric::RandDistance)
        CHECK(fuzzy_rand_expectation_fast(f1, f2) == Approx(naiveE).margin(1e-9));
    }
  }
}

TEST_CASE("possibility distribution matches the fixture and naive search") {
  const SoftClustering p = fixtures::possibilistic_c_leaning2();
  const SoftClustering c = fixtures::reference_soft();

  const ValueDistribution d = distributional_possibilistic(p, c, BaseMetric::RandDistance);
  CHECK(d.max_weight() == Approx(1.0));
  CHECK(d.weight_of(0.0) == Approx(1.0));
  CHECK(d.weight_of(2.0 / 3.0) == Approx(0.5));

  gen::Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + gen::below(rng, 4);
    const std::size_t k = 2 + gen::below(rng, 2);
    const SoftClustering p1 = gen::random_possibilistic(rng, n, k);
    const SoftClustering p2 = gen::random_possibilistic(rng, n, k);
    for (auto tnorm : {TNorm::Min, TNorm::Product}) {
      const ValueDistribution d1 =
          distributional_possibilistic(p1, p2, BaseMetric::RandDistance, tnorm);
      const auto naive = brute::possibility_distribution(p1, p2, BaseMetric::RandDistance,
                                                         tnorm == TNorm::Product);
      REQUIRE(d1.entries().size() == naive.size());
      for (std::size_t i = 0; i < naive.size(); ++i) {
        CHECK(d1.entries()[i].first == Approx(naive[i].value).margin(1e-9));
        CHECK(d1.entries()[i].second == Approx(naive[i].weight).margin(1e-9));
      }
    }
  }
}

TEST_CASE("per-object products build the distribution over rough clusterings") {
  const SoftClustering e = fixtures::evidential_a_hedging();
  const RCDistribution d = distribution_over_rcs(e);
  REQUIRE(d.focal.size() == 2);
  CHECK(d.mass_sum() == Approx(1.0));
  // masses 0.6 on the crisp reading, 0.4 on the hedged one
  double crisp = -1.0, hedged = -1.0;
  for (const auto& f : d.focal) {
    if (f.regions[0] == 0b01) crisp = f.mass;
    if (f.regions[0] == 0b11) hedged = f.mass;
  }
  CHECK(crisp == Approx(0.6));
  CHECK(hedged == Approx(0.4));
}

TEST_CASE("evidential value-set masses match the fixture") {
  const SoftClustering e = fixtures::evidential_a_hedging();
  const SoftClustering c = fixtures::reference_soft();
  const ValueSetMass vsm = distributional_evidential(e, c, BaseMetric::RandDistance);
  REQUIRE(vsm.size() == 2);
  CHECK(mass_of_value_set(vsm, {0.0}) == Approx(0.6));
  CHECK(mass_of_value_set(vsm, {0.0, 2.0 / 3.0}) == Approx(0.4));

  const EvidentialExpectations ee = evidential_expectations(
      distribution_over_rcs(e), distribution_over_rcs(c), BaseMetric::RandDistance);
  CHECK(ee.expectation.lower == Approx(0.0).margin(1e-12));
  CHECK(ee.expectation.upper == Approx(fixtures::kEvidExpectationHigh));
  CHECK(ee.interval.lower == Approx(0.0).margin(1e-12));
  CHECK(ee.interval.upper == Approx(2.0 / 3.0));
}

TEST_CASE("evidential value-set masses agree with naive enumeration on random inputs") {
  gen::Rng rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + gen::below(rng, 3);
    const std::size_t k = 2 + gen::below(rng, 2);
    const SoftClustering m1 = gen::random_evidential(rng, n, k, 2);
    const SoftClustering m2 = gen::random_evidential(rng, n, k, 2);
    for (auto metric : {BaseMetric::RandDistance, BaseMetric::PartitionDistance}) {
      const ValueSetMass vsm = distributional_evidential(m1, m2, metric);
      const auto naive = brute::evidential_value_sets(m1, m2, metric);
      REQUIRE(vsm.size() == naive.size());
      double total = 0.0;
      for (const auto& e : naive) {
        CHECK(mass_of_value_set(vsm, e.values) == Approx(e.mass).margin(1e-9));
        total += e.mass;
      }
      CHECK(total == Approx(1.0));
    }
  }
}

TEST_CASE("expectation summaries integrate the value-set masses") {
  gen::Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const SoftClustering m1 = gen::random_evidential(rng, 4, 2, 2);
    const SoftClustering m2 = gen::random_evidential(rng, 4, 2, 2);
    const ValueSetMass vsm = distributional_evidential(m1, m2, BaseMetric::RandDistance);
    const ExpectationSummary es = expectation_summary(vsm);
    const EvidentialExpectations ee = evidential_expectations(
        distribution_over_rcs(m1), distribution_over_rcs(m2), BaseMetric::RandDistance);
    CHECK(ee.expectation.lower == Approx(es.lower).margin(1e-12));
    CHECK(ee.expectation.upper == Approx(es.upper).margin(1e-12));
  }
}

TEST_CASE("consonant joint reading uses global possibility levels") {
  const SoftClustering p = fixtures::possibilistic_c_leaning2();
  const RCDistribution d = rc_distribution_consonant(p);
  REQUIRE(d.focal.size() == 2);
  CHECK(d.focal[0].mass == Approx(0.5));  // level 1 down to 0.5
  CHECK(d.focal[0].regions == std::vector<std::uint64_t>{0b01, 0b01, 0b10});
  CHECK(d.focal[1].mass == Approx(0.5));  // level 0.5 down to 0
  CHECK(d.focal[1].regions == std::vector<std::uint64_t>{0b01, 0b01, 0b11});

  const RCDistribution crisp = rc_distribution_of_rough(
      RoughClustering::from_hard(fixtures::reference_hard()));
  const EvidentialExpectations ee =
      evidential_expectations(d, crisp, BaseMetric::RandDistance);
  CHECK(ee.expectation.lower == Approx(0.0).margin(1e-12));
  CHECK(ee.expectation.upper == Approx(fixtures::kPossExpectationHigh));

  const ValueSetMass vsm = distributional_evidential(d, crisp, BaseMetric::RandDistance);
  CHECK(mass_of_value_set(vsm, {0.0}) == Approx(0.5));
  CHECK(mass_of_value_set(vsm, {0.0, 2.0 / 3.0}) == Approx(0.5));

  // at most n*k focal elements even for rich contours
  gen::Rng rng(29);
  const SoftClustering big = gen::random_possibilistic(rng, 12, 3);
  const RCDistribution dbig = rc_distribution_consonant(big);
  CHECK(dbig.focal.size() <= 12 * 3);
  CHECK(dbig.mass_sum() == Approx(1.0));
  // nested regions: each focal's regions contain the previous level's
  for (std::size_t i = 1; i < dbig.focal.size(); ++i)
    for (std::size_t x = 0; x < dbig.n(); ++x)
      CHECK((dbig.focal[i - 1].regions[x] & ~dbig.focal[i].regions[x]) == 0);

  CHECK_THROWS_AS(rc_distribution_consonant(fixtures::fuzzy_c_split()), Error);
}

TEST_CASE("total compatibility holds exactly when all mass lands on zero") {
  const SoftClustering c = fixtures::reference_soft();
  CHECK(total_compatibility(c, c));

  // region widening on one side breaks it: the wide object admits a labeling
  // inequivalent to the reference
  const SoftClustering r = fixtures::rough_c_undecided().to_soft();
  CHECK_FALSE(total_compatibility(r, c));
  const ValueSetMass vsm = distributional_evidential(r, c, BaseMetric::RandDistance);
  CHECK(mass_of_value_set(vsm, {0.0}) < 0.0);  // no pure-zero value set at all

  // relabeled copies are still totally compatible
  const HardClustering relabeled(Frame(2), {1, 1, 0});
  CHECK(total_compatibility(c, relabeled.to_soft()));
}

TEST_CASE("budget violations surface before heavy enumeration") {
  gen::Rng rng(31);
  const SoftClustering wide1 = gen::random_rough(rng, 25, 3, 1.0).to_soft();
  const SoftClustering wide2 = gen::random_rough(rng, 25, 3, 1.0).to_soft();
  CHECK_THROWS_AS(distributional_evidential(wide1, wide2, BaseMetric::RandDistance, 1e5),
                  BudgetExceededError);
  CHECK_THROWS_AS(
      rough_interval_exact(RoughClustering::from_soft(wide1), RoughClustering::from_soft(wide2),
                           BaseMetric::RandDistance, 1e5),
      BudgetExceededError);
}
