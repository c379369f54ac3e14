// The five reference clusterers on small synthetic data: recovery of well
// separated groups, validity of the soft outputs they emit, determinism, and
// refusal of degenerate inputs.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <softcmp/clusterers.hpp>

using namespace softcmp;
using Catch::Approx;

namespace {

// three tight, well separated blobs of 8 points each in the plane
Dataset blobs3() {
  Dataset ds;
  ds.dim = 2;
  const double centers[3][2] = {{0.0, 0.0}, {10.0, 0.0}, {0.0, 10.0}};
  std::mt19937_64 rng(99);
  std::normal_distribution<double> noise(0.0, 0.3);
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < 8; ++i) {
      ds.values.push_back(centers[c][0] + noise(rng));
      ds.values.push_back(centers[c][1] + noise(rng));
    }
  ds.n = 24;
  return ds;
}

bool groups_recovered(const std::vector<std::uint32_t>& labels) {
  // within each blob all labels equal, across blobs all different
  std::set<std::uint32_t> firsts;
  for (int c = 0; c < 3; ++c) {
    const std::uint32_t l = labels[c * 8];
    firsts.insert(l);
    for (int i = 1; i < 8; ++i)
      if (labels[c * 8 + i] != l) return false;
  }
  return firsts.size() == 3;
}

}  // namespace

TEST_CASE("standardize centers and scales features") {
  Dataset ds;
  ds.n = 4;
  ds.dim = 2;
  ds.values = {1, 7, 2, 7, 3, 7, 4, 7};  // second column constant
  standardize(ds);
  double mean0 = 0, var0 = 0;
  for (std::size_t i = 0; i < 4; ++i) mean0 += ds.values[i * 2] / 4.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double d = ds.values[i * 2] - mean0;
    var0 += d * d / 4.0;
  }
  CHECK(mean0 == Approx(0.0).margin(1e-12));
  CHECK(var0 == Approx(1.0).margin(1e-12));
  for (std::size_t i = 0; i < 4; ++i) CHECK(ds.values[i * 2 + 1] == Approx(0.0).margin(1e-12));
}

TEST_CASE("k-means recovers separated blobs deterministically") {
  const Dataset ds = blobs3();
  FitOptions opt;
  opt.seed = 1;
  const KMeansResult r = kmeans(ds, 3, opt);
  CHECK(r.converged);
  CHECK(groups_recovered(r.labels));
  CHECK(r.objective < 10.0);
  CHECK(r.to_hard().k() == 3);

  const KMeansResult again = kmeans(ds, 3, opt);
  CHECK(again.labels == r.labels);
  CHECK(again.objective == r.objective);

  CHECK_THROWS_AS(kmeans(ds, 0, opt), Error);
  CHECK_THROWS_AS(kmeans(ds, 25, opt), Error);  // more clusters than points
  Dataset empty;
  CHECK_THROWS_AS(kmeans(empty, 2, opt), Error);
}

TEST_CASE("fuzzy c-means yields valid memberships that harden on separated data") {
  const Dataset ds = blobs3();
  FitOptions opt;
  opt.seed = 2;
  const FuzzyCMeansResult r = fuzzy_cmeans(ds, 3, 2.0, opt);
  CHECK(r.converged);
  for (std::size_t i = 0; i < ds.n; ++i) {
    double sum = 0.0, best = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
      const double u = r.memberships[i * 3 + c];
      REQUIRE(u >= 0.0);
      REQUIRE(u <= 1.0 + 1e-12);
      sum += u;
      best = std::max(best, u);
    }
    CHECK(sum == Approx(1.0));
    CHECK(best > 0.9);  // blobs are far apart
  }
  const SoftClustering soft = r.to_soft();
  CHECK(classify(soft) == SCKind::Fuzzy);

  // a higher fuzzifier flattens the memberships
  const FuzzyCMeansResult flat = fuzzy_cmeans(ds, 3, 5.0, opt);
  double flatBest = 1.0;
  for (std::size_t i = 0; i < ds.n; ++i) {
    double best = 0.0;
    for (std::size_t c = 0; c < 3; ++c) best = std::max(best, flat.memberships[i * 3 + c]);
    flatBest = std::min(flatBest, best);
  }
  CHECK(flatBest < 0.9);

  CHECK_THROWS_AS(fuzzy_cmeans(ds, 3, 1.0, opt), Error);  // fuzzifier must exceed 1
}

TEST_CASE("possibilistic c-means produces normal consonant outputs") {
  const Dataset ds = blobs3();
  FitOptions opt;
  opt.seed = 3;
  const PossibilisticCMeansResult r = possibilistic_cmeans(ds, 3, 2.0, opt);
  for (std::size_t c = 0; c < 3; ++c) CHECK(r.eta[c] > 0.0);
  for (std::size_t i = 0; i < ds.n; ++i) {
    const std::vector<double> pi = r.possibility_row(i);
    double top = 0.0;
    for (double v : pi) {
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0 + 1e-12);
      top = std::max(top, v);
    }
    CHECK(top == Approx(1.0));
  }
  const SoftClustering soft = r.to_soft();
  const SCKind kind = classify(soft);
  CHECK((kind == SCKind::Possibilistic || kind == SCKind::Hard));
}

TEST_CASE("rough k-means widens regions as the boundary ratio grows") {
  const Dataset ds = blobs3();
  FitOptions opt;
  opt.seed = 4;

  const RoughKMeansResult tight = rough_kmeans(ds, 3, 1.0, 0.7, opt);
  std::vector<std::uint32_t> tightLabels;
  for (auto reg : tight.regions) {
    CHECK(std::popcount(reg) == 1);
    tightLabels.push_back(static_cast<std::uint32_t>(std::countr_zero(reg)));
  }
  CHECK(groups_recovered(tightLabels));

  const RoughKMeansResult wide = rough_kmeans(ds, 3, 100.0, 0.7, opt);
  std::size_t multi = 0;
  for (auto reg : wide.regions) {
    CHECK(std::popcount(reg) >= 1);
    if (std::popcount(reg) > 1) ++multi;
  }
  CHECK(multi == ds.n);  // ratio 100 swallows every center

  const SoftClustering soft = tight.to_soft();
  CHECK(classify(soft) == SCKind::Hard);
  const SCKind wideKind = classify(wide.to_soft());
  CHECK((wideKind == SCKind::Rough || wideKind == SCKind::Hard));
}

TEST_CASE("evidential c-means spreads mass over subsets and flags outliers") {
  Dataset ds = blobs3();
  // one outlier, far enough to beat delta=3 but not so far that the
  // distance-weighted seeding is forced to spend a center on it
  ds.values.push_back(20.0);
  ds.values.push_back(20.0);
  ds.n += 1;

  FitOptions opt;
  opt.seed = 5;
  const EvidentialCMeansResult r = evidential_cmeans(ds, 3, 1.0, 2.0, 3.0, opt);
  REQUIRE(r.focalMasks.size() == 8);
  CHECK(r.focalMasks[0] == 0);
  for (std::size_t i = 0; i < ds.n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < 8; ++j) {
      const double m = r.masses[i * 8 + j];
      REQUIRE(m >= -1e-12);
      sum += m;
    }
    CHECK(sum == Approx(1.0));
  }
  // the outlier holds far more empty-set mass than any blob member
  double blobEmpty = 0.0;
  for (std::size_t i = 0; i < 24; ++i) blobEmpty = std::max(blobEmpty, r.masses[i * 8]);
  CHECK(r.masses[24 * 8] > 0.9);
  CHECK(blobEmpty < 0.5);

  const SoftClustering soft = r.to_soft(EmptySetPolicy::RedistributeOmega);
  CHECK(soft.n() == ds.n);
  CHECK_THROWS_AS(r.to_soft(EmptySetPolicy::Reject), Error);

  CHECK_THROWS_AS(evidential_cmeans(ds, 21, 1.0, 2.0, 3.0, opt), Error);  // 2^21 focal sets
}

TEST_CASE("all fitters are deterministic for a fixed seed") {
  const Dataset ds = blobs3();
  FitOptions opt;
  opt.seed = 6;
  CHECK(kmeans(ds, 3, opt).objective == kmeans(ds, 3, opt).objective);
  CHECK(fuzzy_cmeans(ds, 3, 2.0, opt).objective == fuzzy_cmeans(ds, 3, 2.0, opt).objective);
  CHECK(possibilistic_cmeans(ds, 3, 2.0, opt).objective ==
        possibilistic_cmeans(ds, 3, 2.0, opt).objective);
  CHECK(rough_kmeans(ds, 3, 1.1, 0.7, opt).objective ==
        rough_kmeans(ds, 3, 1.1, 0.7, opt).objective);
  CHECK(evidential_cmeans(ds, 3, 1.0, 2.0, 10.0, opt).objective ==
        evidential_cmeans(ds, 3, 1.0, 2.0, 10.0, opt).objective);
}
