#pragma once

// Distributional comparison of soft clusterings. A soft clustering is read as
// a distribution over hard clusterings; comparing two of them pushes a base
// distance through that uncertainty: a set of attainable values for rough
// inputs, a probability distribution for fuzzy inputs, a possibility
// distribution for possibilistic inputs, and a mass function over value sets
// for evidential inputs. Interval and expectation summaries compress those
// objects back to two numbers.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "softcmp/common.hpp"
#include "softcmp/core.hpp"
#include "softcmp/enumerate.hpp"
#include "softcmp/errors.hpp"
#include "softcmp/metrics.hpp"

namespace softcmp {

// --- rough clusterings and distributions over them --------------------------

struct RoughClustering {
  Frame frame;
  std::vector<std::uint64_t> regions;  // nonempty cluster sets, one per object

  RoughClustering() = default;
  RoughClustering(Frame f, std::vector<std::uint64_t> r) : frame(std::move(f)), regions(std::move(r)) {
    for (auto reg : regions) {
      if (reg == 0) throw Error(Errc::EmptyFocalSet, "empty region");
      if ((reg & ~frame.mask()) != 0) throw Error(Errc::UnknownLabel, "region outside frame");
    }
  }

  std::size_t n() const { return regions.size(); }
  std::size_t k() const { return frame.size(); }

  SoftClustering to_soft() const {
    std::vector<MassFunction> masses;
    masses.reserve(regions.size());
    for (auto r : regions) masses.push_back(MassFunction::categorical(r));
    return SoftClustering(frame, std::move(masses));
  }

  static RoughClustering from_soft(const SoftClustering& m) {
    std::vector<std::uint64_t> regions;
    regions.reserve(m.n());
    for (const auto& mf : m.masses()) {
      if (!mf.is_logical())
        throw Error(Errc::UnknownKind, "clustering is not rough: object has several focal sets");
      regions.push_back(mf.focal().front().first);
    }
    return RoughClustering(m.frame(), std::move(regions));
  }

  static RoughClustering from_hard(const HardClustering& c) {
    std::vector<std::uint64_t> regions;
    regions.reserve(c.n());
    for (auto lab : c.labels) regions.push_back(1ull << lab);
    return RoughClustering(c.frame, std::move(regions));
  }
};

struct FocalRC {
  std::vector<std::uint64_t> regions;
  double mass = 0.0;
};

struct RCDistribution {
  Frame frame;
  std::vector<FocalRC> focal;

  std::size_t n() const { return focal.empty() ? 0 : focal.front().regions.size(); }

  double mass_sum() const {
    double s = 0.0;
    for (const auto& f : focal) s += f.mass;
    return s;
  }

  // total number of (rough clustering, compatible clustering) combinations
  double compatible_total() const {
    double s = 0.0;
    for (const auto& f : focal) s += count_product(f.regions);
    return std::min(s, 1e300);
  }
};

// --- value containers -------------------------------------------------------

// Sorted set of distance values with kEqTol grouping. Base distances are
// rationals with small denominators, so the grouping is unambiguous.
class ValueSet {
 public:
  void insert(double v) {
    auto it = std::lower_bound(vals_.begin(), vals_.end(), v);
    if (it != vals_.end() && *it - v <= kEqTol) return;
    if (it != vals_.begin() && v - *(it - 1) <= kEqTol) return;
    vals_.insert(it, v);
  }

  const std::vector<double>& values() const { return vals_; }
  bool empty() const { return vals_.empty(); }
  std::size_t size() const { return vals_.size(); }
  double min() const { return vals_.front(); }
  double max() const { return vals_.back(); }

  bool contains(double v, double tol = kEqTol) const {
    auto it = std::lower_bound(vals_.begin(), vals_.end(), v - tol);
    return it != vals_.end() && *it <= v + tol;
  }

  // negative / zero / positive, lexicographic with tolerance
  static int compare(const ValueSet& a, const ValueSet& b, double tol = kEqTol) {
    const std::size_t m = std::min(a.vals_.size(), b.vals_.size());
    for (std::size_t i = 0; i < m; ++i) {
      if (a.vals_[i] < b.vals_[i] - tol) return -1;
      if (a.vals_[i] > b.vals_[i] + tol) return 1;
    }
    if (a.vals_.size() != b.vals_.size()) return a.vals_.size() < b.vals_.size() ? -1 : 1;
    return 0;
  }

 private:
  std::vector<double> vals_;
};

struct ValueSetLess {
  bool operator()(const ValueSet& a, const ValueSet& b) const { return ValueSet::compare(a, b) < 0; }
};

enum class WeightKind { Probability, Possibility };

// Distance values paired with probability or possibility weights.
class ValueDistribution {
 public:
  explicit ValueDistribution(WeightKind kind = WeightKind::Probability) : kind_(kind) {}

  WeightKind kind() const { return kind_; }
  const std::vector<std::pair<double, double>>& entries() const { return entries_; }

  // probability accumulation
  void add(double v, double w) { slot(v) += w; }
  // possibility accumulation under the given s-conorm
  void join_max(double v, double w) {
    double& s = slot(v);
    s = std::max(s, w);
  }
  void join_prob_sum(double v, double w) {
    double& s = slot(v);
    s = s + w - s * w;
  }

  double weight_of(double v, double tol = kEqTol) const {
    for (const auto& [val, w] : entries_)
      if (std::abs(val - v) <= tol) return w;
    return 0.0;
  }

  double total_weight() const {
    double s = 0.0;
    for (const auto& e : entries_) s += e.second;
    return s;
  }

  double max_weight() const {
    double s = 0.0;
    for (const auto& e : entries_) s = std::max(s, e.second);
    return s;
  }

  double min_value() const { return entries_.front().first; }
  double max_value() const { return entries_.back().first; }
  bool empty() const { return entries_.empty(); }

  double expectation() const {
    double s = 0.0;
    for (const auto& [v, w] : entries_) s += v * w;
    return s;
  }

  ValueSet support() const {
    ValueSet vs;
    for (const auto& e : entries_) vs.insert(e.first);
    return vs;
  }

 private:
  double& slot(double v) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                               [](const auto& e, double x) { return e.first < x; });
    if (it != entries_.end() && it->first - v <= kEqTol) return it->second;
    if (it != entries_.begin() && v - (it - 1)->first <= kEqTol) return (it - 1)->second;
    return entries_.insert(it, {v, 0.0})->second;
  }

  WeightKind kind_;
  std::vector<std::pair<double, double>> entries_;
};

using ValueSetMass = std::map<ValueSet, double, ValueSetLess>;

struct IntervalSummary {
  double lower = 0.0;
  double upper = 0.0;
};

struct ExpectationSummary {
  double lower = 0.0;
  double upper = 0.0;
};

inline IntervalSummary interval_summary(const ValueSet& vs) {
  if (vs.empty()) throw Error(Errc::EmptySet, "interval of an empty value set");
  return {vs.min(), vs.max()};
}

// Lower/upper expectation: per focal value set take the min (resp. max)
// attainable value, weight by its mass.
inline ExpectationSummary expectation_summary(const ValueSetMass& e) {
  if (e.empty()) throw Error(Errc::EmptySet, "expectation of an empty mass function");
  ExpectationSummary s;
  for (const auto& [vs, m] : e) {
    s.lower += m * vs.min();
    s.upper += m * vs.max();
  }
  return s;
}

// --- per-object focal enumeration (the distribution a soft clustering
// --- induces over rough clusterings) ---------------------------------------

inline double focal_count_product(const SoftClustering& m) {
  double p = 1.0;
  for (const auto& mf : m.masses()) {
    p *= static_cast<double>(mf.focal_count());
    if (p > 1e300) return 1e300;
  }
  return p;
}

// Visits every choice of one focal set per object together with the product
// mass. The regions vector is updated in place between calls.
template <class Visit>
void for_each_focal_rc(const SoftClustering& m, Visit&& visit, double budget = kDefaultBudget) {
  check_budget(focal_count_product(m), budget, "focal rough clusterings");
  const std::size_t n = m.n();
  std::vector<std::uint64_t> regions(n);
  std::vector<std::uint32_t> pos(n, 0);
  double mass = 1.0;
  for (std::size_t x = 0; x < n; ++x) {
    regions[x] = m.mass_of(x).focal().front().first;
    mass *= m.mass_of(x).focal().front().second;
  }
  std::uint64_t sinceRefresh = 0;
  auto refresh = [&]() {
    mass = 1.0;
    for (std::size_t x = 0; x < n; ++x) mass *= m.mass_of(x).focal()[pos[x]].second;
    sinceRefresh = 0;
  };
  visit(std::as_const(regions), mass);
  while (true) {
    std::size_t i = 0;
    while (i < n && pos[i] + 1 == m.mass_of(i).focal_count()) ++i;
    if (i == n) return;
    for (std::size_t j = 0; j < i; ++j) {
      mass /= m.mass_of(j).focal()[pos[j]].second;
      pos[j] = 0;
      regions[j] = m.mass_of(j).focal().front().first;
      mass *= m.mass_of(j).focal().front().second;
      ++sinceRefresh;
    }
    mass /= m.mass_of(i).focal()[pos[i]].second;
    ++pos[i];
    regions[i] = m.mass_of(i).focal()[pos[i]].first;
    mass *= m.mass_of(i).focal()[pos[i]].second;
    if (++sinceRefresh >= 4096) refresh();
    visit(std::as_const(regions), mass);
  }
}

// Materialized form of the enumeration above.
inline RCDistribution distribution_over_rcs(const SoftClustering& m,
                                            double budget = kDefaultBudget) {
  RCDistribution d;
  d.frame = m.frame();
  for_each_focal_rc(
      m,
      [&](const std::vector<std::uint64_t>& regions, double mass) {
        d.focal.push_back(FocalRC{regions, mass});
      },
      budget);
  return d;
}

inline RCDistribution rc_distribution_of_rough(const RoughClustering& r) {
  RCDistribution d;
  d.frame = r.frame;
  d.focal.push_back(FocalRC{r.regions, 1.0});
  return d;
}

// Joint consonant reading of a possibilistic clustering: cut the per-object
// contours at every level that occurs; each cut is a rough clustering and the
// gaps between consecutive levels are its mass. Requires normal contours
// (max 1 per object) and per-object consonant masses.
inline RCDistribution rc_distribution_consonant(const SoftClustering& m) {
  const std::size_t n = m.n(), k = m.k();
  std::vector<std::vector<double>> mu(n);
  std::vector<double> levels;
  for (std::size_t x = 0; x < n; ++x) {
    if (!m.mass_of(x).is_consonant())
      throw Error(Errc::UnknownKind, "clustering is not possibilistic: focal sets not nested");
    mu[x] = consonant_contour(m.mass_of(x), k);
    double top = 0.0;
    for (double v : mu[x]) top = std::max(top, v);
    if (std::abs(top - 1.0) > kEqTol)
      throw Error(Errc::SubnormalPossibility,
                  "object " + std::to_string(x) + " has max possibility " + std::to_string(top));
    for (double v : mu[x])
      if (v > kEqTol) levels.push_back(v);
  }
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end(),
                           [](double a, double b) { return a - b <= kEqTol; }),
               levels.end());

  RCDistribution d;
  d.frame = m.frame();
  for (std::size_t li = 0; li < levels.size(); ++li) {
    const double level = levels[li];
    const double next = li + 1 < levels.size() ? levels[li + 1] : 0.0;
    FocalRC f;
    f.mass = level - next;
    f.regions.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
      std::uint64_t reg = 0;
      for (std::size_t w = 0; w < k; ++w)
        if (mu[x][w] >= level - kEqTol) reg |= 1ull << w;
      f.regions[x] = reg;
    }
    if (f.mass > kEqTol) d.focal.push_back(std::move(f));
  }
  return d;
}

// --- compatible hard clusterings --------------------------------------------

inline double compatible_count(const RoughClustering& r) { return count_product(r.regions); }

inline std::vector<HardClustering> compatible_hcs(const RoughClustering& r,
                                                  double budget = kDefaultBudget) {
  std::vector<HardClustering> out;
  for_each_compatible(
      r.regions,
      [&](std::span<const std::uint8_t> labels) {
        std::vector<std::uint32_t> l(labels.begin(), labels.end());
        out.emplace_back(r.frame, std::move(l));
      },
      budget);
  return out;
}

// --- exact distributional measures -------------------------------------------

namespace detail {

template <class Fn>
void with_tracker(BaseMetric metric, std::size_t k1, std::size_t k2, Fn&& fn) {
  if (metric == BaseMetric::RandDistance) {
    RandDistanceTracker t(k1, k2);
    fn(t);
  } else {
    PartitionDistanceTracker t(k1, k2);
    fn(t);
  }
}

inline void require_comparable(std::size_t n1, std::size_t n2, BaseMetric) {
  require_same_n(n1, n2);
  require_pairable(n1);
}

}  // namespace detail

// Set of base-distance values attainable over compatible pairs.
inline ValueSet distributional_rough(const RoughClustering& r1, const RoughClustering& r2,
                                     BaseMetric metric = BaseMetric::RandDistance,
                                     double budget = kDefaultBudget) {
  detail::require_comparable(r1.n(), r2.n(), metric);
  ValueSet out;
  detail::with_tracker(metric, r1.k(), r2.k(), [&](auto& tracker) {
    for_each_compatible_pair(
        r1.regions, r2.regions, tracker,
        [&](const auto& t) { out.insert(t.value()); }, budget);
  });
  return out;
}

// Streaming min/max of the same enumeration; cheaper when only the interval
// is needed.
inline IntervalSummary rough_interval_exact(std::span<const std::uint64_t> r1,
                                            std::span<const std::uint64_t> r2, std::size_t k1,
                                            std::size_t k2, BaseMetric metric,
                                            double budget = kDefaultBudget) {
  IntervalSummary s{1e300, -1e300};
  detail::with_tracker(metric, k1, k2, [&](auto& tracker) {
    for_each_compatible_pair(
        r1, r2, tracker,
        [&](const auto& t) {
          const double v = t.value();
          s.lower = std::min(s.lower, v);
          s.upper = std::max(s.upper, v);
        },
        budget);
  });
  return s;
}

inline IntervalSummary rough_interval_exact(const RoughClustering& r1, const RoughClustering& r2,
                                            BaseMetric metric = BaseMetric::RandDistance,
                                            double budget = kDefaultBudget) {
  detail::require_comparable(r1.n(), r2.n(), metric);
  return rough_interval_exact(r1.regions, r2.regions, r1.k(), r2.k(), metric, budget);
}

namespace detail {

// Keeps per-object weights of the currently enumerated pair. Probabilities
// are maintained as one running product (refreshed periodically to cap
// drift); possibilities expose per-object values for t-norm folding.
struct PairWeights {
  // w[side][x * k + cluster]
  std::array<std::vector<double>, 2> w;
  std::array<std::vector<double>, 2> cur;  // current per-object weight
  std::array<std::size_t, 2> k{0, 0};

  void init_side(int s, const SoftClustering& m, bool contourWeights) {
    const std::size_t n = m.n(), kk = m.k();
    k[s] = kk;
    w[s].assign(n * kk, 0.0);
    cur[s].assign(n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
      if (contourWeights) {
        for (std::size_t c = 0; c < kk; ++c) w[s][x * kk + c] = m.mass_of(x).contour(c);
      } else {
        for (const auto& [set, mass] : m.mass_of(x).focal()) {
          if (std::popcount(set) != 1)
            throw Error(Errc::NotFuzzy, "object has a non-singleton focal set");
          w[s][x * kk + static_cast<std::size_t>(std::countr_zero(set))] = mass;
        }
      }
    }
  }

  void reset(const PairLabels& labels) {
    for (int s = 0; s < 2; ++s) {
      const auto& lab = s == 0 ? labels.a : labels.b;
      for (std::size_t x = 0; x < lab.size(); ++x) cur[s][x] = w[s][x * k[s] + lab[x]];
    }
  }

  void changed(int side, std::size_t x, std::uint8_t newL) {
    cur[side][x] = w[side][x * k[side] + newL];
  }
};

template <class DistTracker>
struct FuzzyPairTracker {
  DistTracker dist;
  PairWeights weights;
  double product = 1.0;
  std::uint64_t sinceRefresh = 0;

  FuzzyPairTracker(DistTracker d) : dist(std::move(d)) {}

  void reset(const PairLabels& labels) {
    dist.reset(labels);
    weights.reset(labels);
    refresh();
  }

  void refresh() {
    product = 1.0;
    for (int s = 0; s < 2; ++s)
      for (double v : weights.cur[s]) product *= v;
    sinceRefresh = 0;
  }

  void changed(const PairLabels& labels, int side, std::size_t x, std::uint8_t oldL,
               std::uint8_t newL) {
    dist.changed(labels, side, x, oldL, newL);
    const double old = weights.cur[side][x];
    weights.changed(side, x, newL);
    product *= weights.cur[side][x] / old;
    if (++sinceRefresh >= 4096) refresh();
  }

  double value() const { return dist.value(); }
};

}  // namespace detail

enum class TNorm { Min, Product };

inline TNorm parse_tnorm(const std::string& s) {
  if (s == "min") return TNorm::Min;
  if (s == "product") return TNorm::Product;
  throw Error(Errc::UnknownTNorm, s);
}

// Probability distribution of the base distance when both clusterings are
// fuzzy: independent per-object draws induce a product law over compatible
// pairs.
inline ValueDistribution distributional_fuzzy(const SoftClustering& f1, const SoftClustering& f2,
                                              BaseMetric metric = BaseMetric::RandDistance,
                                              double budget = kDefaultBudget) {
  detail::require_comparable(f1.n(), f2.n(), metric);
  for (const auto* m : {&f1, &f2}) {
    const SCKind kind = classify(*m);
    if (kind != SCKind::Fuzzy && kind != SCKind::Hard)
      throw Error(Errc::NotFuzzy, "distributional_fuzzy needs fuzzy inputs");
  }
  std::vector<std::uint64_t> s1, s2;
  for (const auto& mf : f1.masses()) s1.push_back(mf.support());
  for (const auto& mf : f2.masses()) s2.push_back(mf.support());

  ValueDistribution out(WeightKind::Probability);
  detail::with_tracker(metric, f1.k(), f2.k(), [&](auto& distTracker) {
    detail::FuzzyPairTracker tracker(std::move(distTracker));
    tracker.weights.init_side(0, f1, false);
    tracker.weights.init_side(1, f2, false);
    for_each_compatible_pair(
        s1, s2, tracker, [&](const auto& t) { out.add(t.value(), t.product); }, budget);
  });
  return out;
}

// Possibility distribution of the base distance: per-pair possibility is the
// t-norm fold of per-object memberships, values combine under the dual
// s-conorm.
inline ValueDistribution distributional_possibilistic(const SoftClustering& p1,
                                                      const SoftClustering& p2,
                                                      BaseMetric metric = BaseMetric::RandDistance,
                                                      TNorm tnorm = TNorm::Min,
                                                      double budget = kDefaultBudget) {
  detail::require_comparable(p1.n(), p2.n(), metric);
  for (const auto* m : {&p1, &p2}) {
    for (const auto& mf : m->masses())
      if (!mf.is_consonant())
        throw Error(Errc::UnknownKind, "distributional_possibilistic needs consonant inputs");
  }
  std::vector<std::uint64_t> s1, s2;
  for (const auto& mf : p1.masses()) s1.push_back(mf.support());
  for (const auto& mf : p2.masses()) s2.push_back(mf.support());

  ValueDistribution out(WeightKind::Possibility);
  detail::with_tracker(metric, p1.k(), p2.k(), [&](auto& distTracker) {
    detail::FuzzyPairTracker tracker(std::move(distTracker));
    tracker.weights.init_side(0, p1, true);
    tracker.weights.init_side(1, p2, true);
    auto possibility = [&](const decltype(tracker)& t) {
      if (tnorm == TNorm::Product) return t.product;
      double m = 1.0;
      for (int s = 0; s < 2; ++s)
        for (double v : t.weights.cur[s]) m = std::min(m, v);
      return m;
    };
    for_each_compatible_pair(
        s1, s2, tracker,
        [&](const auto& t) {
          if (tnorm == TNorm::Product)
            out.join_prob_sum(t.value(), possibility(t));
          else
            out.join_max(t.value(), possibility(t));
        },
        budget);
  });
  return out;
}

// Mass function over value sets: every pair of focal rough clusterings
// contributes its attainable-value set, weighted by the product mass.
inline ValueSetMass distributional_evidential(const RCDistribution& d1, const RCDistribution& d2,
                                              BaseMetric metric = BaseMetric::RandDistance,
                                              double budget = kDefaultBudget) {
  if (d1.focal.empty() || d2.focal.empty())
    throw Error(Errc::EmptySet, "evidential comparison of an empty distribution");
  detail::require_comparable(d1.n(), d2.n(), metric);
  check_budget(d1.compatible_total() * d2.compatible_total(), budget,
               "compatible clustering pairs across focal combinations");
  ValueSetMass out;
  detail::with_tracker(metric, d1.frame.size(), d2.frame.size(), [&](auto& tracker) {
    for (const auto& f1 : d1.focal) {
      for (const auto& f2 : d2.focal) {
        ValueSet vs;
        for_each_compatible_pair(
            f1.regions, f2.regions, tracker, [&](const auto& t) { vs.insert(t.value()); },
            budget);
        out[vs] += f1.mass * f2.mass;
      }
    }
  });
  return out;
}

inline ValueSetMass distributional_evidential(const SoftClustering& m1, const SoftClustering& m2,
                                              BaseMetric metric = BaseMetric::RandDistance,
                                              double budget = kDefaultBudget) {
  return distributional_evidential(distribution_over_rcs(m1, budget),
                                   distribution_over_rcs(m2, budget), metric, budget);
}

struct EvidentialExpectations {
  ExpectationSummary expectation;  // lower/upper expectation of the base distance
  IntervalSummary interval;        // attainable range over all focal combinations
  double pairsEnumerated = 0.0;
};

// Streaming variant of expectation_summary(distributional_evidential(...)):
// avoids building value sets, which matters once focal structures grow.
inline EvidentialExpectations evidential_expectations(const RCDistribution& d1,
                                                      const RCDistribution& d2,
                                                      BaseMetric metric = BaseMetric::RandDistance,
                                                      double budget = kDefaultBudget) {
  if (d1.focal.empty() || d2.focal.empty())
    throw Error(Errc::EmptySet, "evidential comparison of an empty distribution");
  detail::require_comparable(d1.n(), d2.n(), metric);
  check_budget(d1.compatible_total() * d2.compatible_total(), budget,
               "compatible clustering pairs across focal combinations");
  EvidentialExpectations out;
  out.interval = {1e300, -1e300};
  detail::with_tracker(metric, d1.frame.size(), d2.frame.size(), [&](auto& tracker) {
    for (const auto& f1 : d1.focal) {
      for (const auto& f2 : d2.focal) {
        double lo = 1e300, hi = -1e300;
        for_each_compatible_pair(
            f1.regions, f2.regions, tracker,
            [&](const auto& t) {
              const double v = t.value();
              lo = std::min(lo, v);
              hi = std::max(hi, v);
            },
            budget);
        const double mass = f1.mass * f2.mass;
        out.expectation.lower += mass * lo;
        out.expectation.upper += mass * hi;
        out.interval.lower = std::min(out.interval.lower, lo);
        out.interval.upper = std::max(out.interval.upper, hi);
        out.pairsEnumerated += count_product(f1.regions) * count_product(f2.regions);
      }
    }
  });
  return out;
}

// Closed form for the expected Rand distance between fuzzy clusterings: per
// object pair, the probability of agreeing is s1*s2 + (1-s1)*(1-s2) where si
// is the probability both objects draw the same cluster under side i.
inline double fuzzy_rand_expectation_fast(const SoftClustering& f1, const SoftClustering& f2) {
  detail::require_comparable(f1.n(), f2.n(), BaseMetric::RandDistance);
  const std::size_t n = f1.n();
  std::array<const SoftClustering*, 2> m{&f1, &f2};
  std::array<std::vector<double>, 2> mu;
  for (int s = 0; s < 2; ++s) {
    const SCKind kind = classify(*m[s]);
    if (kind != SCKind::Fuzzy && kind != SCKind::Hard)
      throw Error(Errc::NotFuzzy, "fuzzy_rand_expectation_fast needs fuzzy inputs");
    const std::size_t k = m[s]->k();
    mu[s].assign(n * k, 0.0);
    for (std::size_t x = 0; x < n; ++x)
      for (const auto& [set, mass] : m[s]->mass_of(x).focal())
        mu[s][x * k + static_cast<std::size_t>(std::countr_zero(set))] = mass;
  }
  const std::size_t k1 = f1.k(), k2 = f2.k();
  double agree = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      double s1 = 0.0, s2 = 0.0;
      for (std::size_t c = 0; c < k1; ++c) s1 += mu[0][x * k1 + c] * mu[0][y * k1 + c];
      for (std::size_t c = 0; c < k2; ++c) s2 += mu[1][x * k2 + c] * mu[1][y * k2 + c];
      agree += s1 * s2 + (1.0 - s1) * (1.0 - s2);
    }
  }
  return 1.0 - agree / (static_cast<double>(n) * (n - 1) / 2.0);
}

namespace detail {

// Canonicalizes labels into out; returns false on the first position where it
// deviates from ref (when compareRef is set).
inline bool canonicalize_into(std::span<const std::uint8_t> labels, std::vector<std::uint32_t>& out,
                              const std::vector<std::uint32_t>* ref) {
  std::array<std::uint32_t, kMaxClusters> map;
  map.fill(UINT32_MAX);
  std::uint32_t next = 0;
  out.resize(labels.size());
  for (std::size_t x = 0; x < labels.size(); ++x) {
    if (map[labels[x]] == UINT32_MAX) map[labels[x]] = next++;
    out[x] = map[labels[x]];
    if (ref && out[x] != (*ref)[x]) return false;
  }
  return true;
}

}  // namespace detail

// True when one partition is compatible with every focal rough clustering of
// both sides and no focal set allows anything inequivalent to it: exactly the
// condition under which the evidential measure puts mass 1 on {0}. Exits on
// the first counterexample.
inline bool total_compatibility(const SoftClustering& m1, const SoftClustering& m2,
                                double budget = kDefaultBudget) {
  detail::require_same_n(m1.n(), m2.n());
  double work = 0.0;
  for (const auto* m : {&m1, &m2}) {
    double side = 1.0;
    for (const auto& mf : m->masses()) {
      double regionSum = 0.0;
      for (const auto& e : mf.focal()) regionSum += static_cast<double>(std::popcount(e.first));
      side = std::min(side * regionSum, 1e300);
    }
    work += side;
  }
  check_budget(work, budget, "compatible clusterings across focal combinations");

  std::vector<std::uint32_t> ref, canon;
  bool haveRef = false;
  std::vector<std::uint8_t> labels;
  std::vector<std::uint32_t> pos;
  for (const auto* m : {&m1, &m2}) {
    const std::size_t n = m->n();
    std::vector<std::vector<std::vector<std::uint8_t>>> bits(n);
    for (std::size_t x = 0; x < n; ++x)
      for (const auto& e : m->mass_of(x).focal()) bits[x].push_back(detail::mask_bits(e.first));
    std::vector<std::uint32_t> focalPos(n, 0);
    std::vector<const std::vector<std::uint8_t>*> cur(n);
    for (std::size_t x = 0; x < n; ++x) cur[x] = &bits[x].front();
    labels.resize(n);
    pos.assign(n, 0);
    while (true) {
      for (std::size_t x = 0; x < n; ++x) {
        pos[x] = 0;
        labels[x] = cur[x]->front();
      }
      while (true) {
        if (!haveRef) {
          detail::canonicalize_into(labels, ref, nullptr);
          haveRef = true;
        } else if (!detail::canonicalize_into(labels, canon, &ref)) {
          return false;
        }
        std::size_t i = 0;
        while (i < n && pos[i] + 1 == cur[i]->size()) ++i;
        if (i == n) break;
        for (std::size_t j = 0; j < i; ++j) {
          pos[j] = 0;
          labels[j] = cur[j]->front();
        }
        ++pos[i];
        labels[i] = (*cur[i])[pos[i]];
      }
      std::size_t i = 0;
      while (i < n && focalPos[i] + 1 == bits[i].size()) ++i;
      if (i == n) break;
      for (std::size_t j = 0; j < i; ++j) {
        focalPos[j] = 0;
        cur[j] = &bits[j].front();
      }
      ++focalPos[i];
      cur[i] = &bits[i][focalPos[i]];
    }
  }
  return true;
}

}  // namespace softcmp
