#pragma once

// Deliberately naive reference implementations used to cross-check the real
// ones. No shared code with the library internals: plain double loops,
// recursion, and permutation search, tractable only for the tiny instances
// the tests use.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include <softcmp/core.hpp>
#include <softcmp/metrics.hpp>

namespace brute {

using softcmp::BaseMetric;
using softcmp::MassFunction;
using softcmp::SoftClustering;

using Labels = std::vector<std::uint32_t>;

inline double rand_distance(const Labels& a, const Labels& b) {
  const std::size_t n = a.size();
  long long disagree = 0, total = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      ++total;
      const bool s1 = a[x] == a[y];
      const bool s2 = b[x] == b[y];
      if (s1 != s2) ++disagree;
    }
  return static_cast<double>(disagree) / static_cast<double>(total);
}

// minimum moves to turn a into b, found by trying every cluster matching
inline double partition_distance(const Labels& a, const Labels& b, std::size_t k1,
                                 std::size_t k2) {
  const std::size_t n = a.size();
  const std::size_t k = std::max(k1, k2);
  std::vector<std::vector<long long>> cont(k, std::vector<long long>(k, 0));
  for (std::size_t x = 0; x < n; ++x) ++cont[a[x]][b[x]];
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  long long best = 0;
  do {
    long long matched = 0;
    for (std::size_t i = 0; i < k; ++i) matched += cont[i][perm[i]];
    best = std::max(best, matched);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(static_cast<long long>(n) - best) / (static_cast<double>(n) - 1.0);
}

inline double base_dist(BaseMetric m, const Labels& a, const Labels& b, std::size_t k1,
                        std::size_t k2) {
  if (m == BaseMetric::RandDistance) return rand_distance(a, b);
  return partition_distance(a, b, k1, k2);
}

// all hard labelings compatible with the per-object regions
inline std::vector<Labels> enumerate_compatible(const std::vector<std::uint64_t>& regions,
                                                std::size_t k) {
  std::vector<Labels> out;
  Labels cur(regions.size(), 0);
  auto rec = [&](auto&& self, std::size_t x) -> void {
    if (x == regions.size()) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t c = 0; c < k; ++c) {
      if (regions[x] & (std::uint64_t{1} << c)) {
        cur[x] = c;
        self(self, x + 1);
      }
    }
  };
  rec(rec, 0);
  return out;
}

// every rough clustering a soft clustering can produce, with its mass:
// the cartesian product of per-object focal sets
struct WeightedRegions {
  std::vector<std::uint64_t> regions;
  double mass = 1.0;
};

inline std::vector<WeightedRegions> enumerate_focal_rcs(const SoftClustering& m) {
  std::vector<WeightedRegions> out;
  WeightedRegions cur;
  cur.regions.resize(m.n());
  auto rec = [&](auto&& self, std::size_t x, double mass) -> void {
    if (x == m.n()) {
      out.push_back({cur.regions, mass});
      return;
    }
    for (const auto& [set, w] : m.mass_of(x).focal()) {
      cur.regions[x] = set;
      self(self, x + 1, mass * w);
    }
  };
  rec(rec, 0, 1.0);
  return out;
}

inline std::vector<double> sorted_dedup(std::vector<double> vals, double tol = 1e-9) {
  std::sort(vals.begin(), vals.end());
  std::vector<double> out;
  for (double v : vals)
    if (out.empty() || v - out.back() > tol) out.push_back(v);
  return out;
}

// the set of base-distance values attainable between two region vectors
inline std::vector<double> rough_value_set(const std::vector<std::uint64_t>& r1,
                                           const std::vector<std::uint64_t>& r2, std::size_t k1,
                                           std::size_t k2, BaseMetric metric) {
  std::vector<double> vals;
  for (const auto& a : enumerate_compatible(r1, k1))
    for (const auto& b : enumerate_compatible(r2, k2)) vals.push_back(base_dist(metric, a, b, k1, k2));
  return sorted_dedup(vals);
}

// full mass-over-value-sets by enumerating focal rough clusterings on both
// sides and, per combination, every compatible hard pair
struct ValueSetWeight {
  std::vector<double> values;
  double mass = 0.0;
};

inline bool same_value_set(const std::vector<double>& a, const std::vector<double>& b,
                           double tol = 1e-9) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

inline std::vector<ValueSetWeight> evidential_value_sets(const SoftClustering& m1,
                                                         const SoftClustering& m2,
                                                         BaseMetric metric) {
  std::vector<ValueSetWeight> out;
  for (const auto& f1 : enumerate_focal_rcs(m1)) {
    for (const auto& f2 : enumerate_focal_rcs(m2)) {
      const std::vector<double> vs =
          rough_value_set(f1.regions, f2.regions, m1.k(), m2.k(), metric);
      const double mass = f1.mass * f2.mass;
      bool found = false;
      for (auto& e : out) {
        if (same_value_set(e.values, vs)) {
          e.mass += mass;
          found = true;
          break;
        }
      }
      if (!found) out.push_back({vs, mass});
    }
  }
  return out;
}

// expected base distance between independent object-wise categorical draws
inline double fuzzy_expectation(const SoftClustering& f1, const SoftClustering& f2,
                                BaseMetric metric) {
  double e = 0.0;
  for (const auto& a : enumerate_focal_rcs(f1)) {
    Labels la(a.regions.size());
    for (std::size_t x = 0; x < la.size(); ++x)
      la[x] = static_cast<std::uint32_t>(std::countr_zero(a.regions[x]));
    for (const auto& b : enumerate_focal_rcs(f2)) {
      Labels lb(b.regions.size());
      for (std::size_t x = 0; x < lb.size(); ++x)
        lb[x] = static_cast<std::uint32_t>(std::countr_zero(b.regions[x]));
      e += a.mass * b.mass * base_dist(metric, la, lb, f1.k(), f2.k());
    }
  }
  return e;
}

// possibility of each attainable distance value: per clustering pair, the
// t-norm of per-object contour values; per distance value, the max
struct ValueWeight {
  double value = 0.0;
  double weight = 0.0;
};

inline std::vector<ValueWeight> possibility_distribution(const SoftClustering& p1,
                                                         const SoftClustering& p2,
                                                         BaseMetric metric, bool productTnorm) {
  const std::size_t n = p1.n();
  std::vector<std::vector<double>> pi1(n), pi2(n);
  for (std::size_t x = 0; x < n; ++x) {
    pi1[x] = softcmp::consonant_contour(p1.mass_of(x), p1.k());
    pi2[x] = softcmp::consonant_contour(p2.mass_of(x), p2.k());
  }
  std::vector<ValueWeight> out;
  Labels a(n, 0), b(n, 0);
  // join with the s-conorm dual to the chosen t-norm: max for min,
  // probabilistic sum for product
  auto add = [&](double v, double w) {
    for (auto& e : out) {
      if (std::abs(e.value - v) <= 1e-9) {
        e.weight = productTnorm ? e.weight + w - e.weight * w : std::max(e.weight, w);
        return;
      }
    }
    out.push_back({v, w});
  };
  auto recB = [&](auto&& self, std::size_t x, double wa, double wb) -> void {
    if (x == n) {
      add(base_dist(metric, a, b, p1.k(), p2.k()),
          productTnorm ? wa * wb : std::min(wa, wb));
      return;
    }
    for (std::uint32_t c = 0; c < p2.k(); ++c) {
      if (pi2[x][c] <= 0.0) continue;
      b[x] = c;
      self(self, x + 1, wa, productTnorm ? wb * pi2[x][c] : std::min(wb, pi2[x][c]));
    }
  };
  auto recA = [&](auto&& self, std::size_t x, double w) -> void {
    if (x == n) {
      recB(recB, 0, w, 1.0);
      return;
    }
    for (std::uint32_t c = 0; c < p1.k(); ++c) {
      if (pi1[x][c] <= 0.0) continue;
      a[x] = c;
      self(self, x + 1, productTnorm ? w * pi1[x][c] : std::min(w, pi1[x][c]));
    }
  };
  recA(recA, 0, 1.0);
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.value < r.value; });
  return out;
}

}  // namespace brute
