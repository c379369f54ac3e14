#pragma once

// Distances between hard clusterings (pair-counting Rand, assignment-based
// partition distance, mutual information), distances between pair-relation
// masses, the evidential Rand index built from them, a Hausdorff lift, and a
// generic metric-axiom checker.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "softcmp/common.hpp"
#include "softcmp/core.hpp"
#include "softcmp/enumerate.hpp"
#include "softcmp/errors.hpp"

namespace softcmp {

enum class PairCounting {
  UnorderedDistinct,    // n(n-1)/2 pairs
  OrderedWithDiagonal,  // n*n ordered pairs, diagonal always agrees
};

namespace detail {

inline void require_same_n(std::size_t n1, std::size_t n2) {
  if (n1 != n2)
    throw Error(Errc::MismatchedObjectCount,
                std::to_string(n1) + " vs " + std::to_string(n2) + " objects");
}

inline void require_pairable(std::size_t n) {
  if (n < 2) throw Error(Errc::OutOfRange, "pair-based measure needs at least 2 objects");
}

template <class L1, class L2>
std::vector<std::vector<long long>> contingency(const L1& a, const L2& b, std::size_t k1,
                                                std::size_t k2) {
  std::vector<std::vector<long long>> c(k1, std::vector<long long>(k2, 0));
  for (std::size_t x = 0; x < a.size(); ++x) ++c[a[x]][b[x]];
  return c;
}

// number of unordered pairs that land in the same cluster under both sides
template <class L1, class L2>
long long agreement_count(const L1& a, const L2& b, std::size_t k1, std::size_t k2) {
  auto c = contingency(a, b, k1, k2);
  const long long n = static_cast<long long>(a.size());
  long long ss = 0, rowsq = 0, colsq = 0;
  std::vector<long long> col(k2, 0);
  for (std::size_t i = 0; i < k1; ++i) {
    long long row = 0;
    for (std::size_t j = 0; j < k2; ++j) {
      ss += c[i][j] * (c[i][j] - 1) / 2;
      row += c[i][j];
      col[j] += c[i][j];
    }
    rowsq += row * (row - 1) / 2;
  }
  for (std::size_t j = 0; j < k2; ++j) colsq += col[j] * (col[j] - 1) / 2;
  const long long total = n * (n - 1) / 2;
  const long long dd = total - rowsq - colsq + ss;
  return ss + dd;
}

// Minimum-cost perfect assignment on a square matrix (potentials method).
// Reused buffers make repeated solves cheap inside enumeration loops.
class HungarianSolver {
 public:
  long long min_cost(const std::vector<std::vector<long long>>& cost) {
    const int n = static_cast<int>(cost.size());
    const long long inf = std::numeric_limits<long long>::max() / 4;
    u_.assign(n + 1, 0);
    v_.assign(n + 1, 0);
    p_.assign(n + 1, 0);
    way_.assign(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
      p_[0] = i;
      int j0 = 0;
      minv_.assign(n + 1, inf);
      used_.assign(n + 1, false);
      do {
        used_[j0] = true;
        const int i0 = p_[j0];
        int j1 = -1;
        long long delta = inf;
        for (int j = 1; j <= n; ++j) {
          if (used_[j]) continue;
          const long long cur = cost[i0 - 1][j - 1] - u_[i0] - v_[j];
          if (cur < minv_[j]) {
            minv_[j] = cur;
            way_[j] = j0;
          }
          if (minv_[j] < delta) {
            delta = minv_[j];
            j1 = j;
          }
        }
        for (int j = 0; j <= n; ++j) {
          if (used_[j]) {
            u_[p_[j]] += delta;
            v_[j] -= delta;
          } else {
            minv_[j] -= delta;
          }
        }
        j0 = j1;
      } while (p_[j0] != 0);
      do {
        const int j1 = way_[j0];
        p_[j0] = p_[j1];
        j0 = j1;
      } while (j0);
    }
    long long sum = 0;
    for (int j = 1; j <= n; ++j) sum += cost[p_[j] - 1][j - 1];
    return sum;
  }

  // maximum-weight assignment of a (possibly rectangular) non-negative matrix
  long long max_weight(const std::vector<std::vector<long long>>& w) {
    const std::size_t rows = w.size();
    std::size_t cols = 0;
    for (const auto& r : w) cols = std::max(cols, r.size());
    const std::size_t n = std::max(rows, cols);
    cost_.assign(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < w[i].size(); ++j) cost_[i][j] = -w[i][j];
    return -min_cost(cost_);
  }

 private:
  std::vector<long long> u_, v_, minv_;
  std::vector<int> p_, way_;
  std::vector<char> used_;
  std::vector<std::vector<long long>> cost_;
};

}  // namespace detail

// --- scalar measures on label vectors -------------------------------------

template <class L1, class L2>
double rand_index_labels(const L1& a, const L2& b, std::size_t k1, std::size_t k2,
                         PairCounting pc = PairCounting::UnorderedDistinct) {
  detail::require_same_n(a.size(), b.size());
  detail::require_pairable(a.size());
  const long long n = static_cast<long long>(a.size());
  const long long agree = detail::agreement_count(a, b, k1, k2);
  if (pc == PairCounting::UnorderedDistinct)
    return static_cast<double>(agree) / (static_cast<double>(n) * (n - 1) / 2.0);
  return (2.0 * static_cast<double>(agree) + n) / (static_cast<double>(n) * n);
}

template <class L1, class L2>
double partition_distance_labels(const L1& a, const L2& b, std::size_t k1, std::size_t k2) {
  detail::require_same_n(a.size(), b.size());
  detail::require_pairable(a.size());
  auto c = detail::contingency(a, b, k1, k2);
  detail::HungarianSolver solver;
  const long long matched = solver.max_weight(c);
  const long long moves = static_cast<long long>(a.size()) - matched;
  return static_cast<double>(moves) / (static_cast<double>(a.size()) - 1.0);
}

inline double rand_index(const HardClustering& c1, const HardClustering& c2,
                         PairCounting pc = PairCounting::UnorderedDistinct) {
  return rand_index_labels(c1.labels, c2.labels, c1.k(), c2.k(), pc);
}

// Minimum number of single-object moves turning one partition into the other,
// normalized by n-1 (the worst case).
inline double partition_distance(const HardClustering& c1, const HardClustering& c2) {
  return partition_distance_labels(c1.labels, c2.labels, c1.k(), c2.k());
}

inline double mutual_information(const HardClustering& c1, const HardClustering& c2,
                                 double logBase = 0.0 /* 0 = natural */) {
  detail::require_same_n(c1.n(), c2.n());
  detail::require_pairable(c1.n());
  auto c = detail::contingency(c1.labels, c2.labels, c1.k(), c2.k());
  const double n = static_cast<double>(c1.n());
  std::vector<double> pi(c1.k(), 0.0), qj(c2.k(), 0.0);
  for (std::size_t i = 0; i < c1.k(); ++i)
    for (std::size_t j = 0; j < c2.k(); ++j) {
      pi[i] += c[i][j] / n;
      qj[j] += c[i][j] / n;
    }
  double mi = 0.0;
  for (std::size_t i = 0; i < c1.k(); ++i)
    for (std::size_t j = 0; j < c2.k(); ++j) {
      const double pij = c[i][j] / n;
      if (pij > 0.0) mi += pij * std::log(pij / (pi[i] * qj[j]));
    }
  mi = std::max(mi, 0.0);
  return logBase > 0.0 ? mi / std::log(logBase) : mi;
}

inline double partition_entropy(const HardClustering& c, double logBase = 0.0) {
  std::vector<double> p(c.k(), 0.0);
  for (auto lab : c.labels) p[lab] += 1.0 / static_cast<double>(c.n());
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log(v);
  return logBase > 0.0 ? h / std::log(logBase) : h;
}

// --- distances between pair-relation masses --------------------------------

enum class MassMetricKind { HalfL1, JousselmeJaccard };

// Normalized metric on masses over {same, different, unknown}. The Jousselme
// variant weights differences by Jaccard overlap of the underlying sets
// ({s}, {not-s}, both), which discounts mass moved between a singleton and
// the unknown set.
inline double mass_metric(const PairRelationMass& a, const PairRelationMass& b,
                          MassMetricKind kind = MassMetricKind::JousselmeJaccard) {
  const double ds = a.same - b.same;
  const double dd = a.different - b.different;
  const double du = a.unknown - b.unknown;
  if (kind == MassMetricKind::HalfL1)
    return 0.5 * (std::abs(ds) + std::abs(dd) + std::abs(du));
  const double q = ds * ds + dd * dd + du * du + ds * du + dd * du;
  return std::sqrt(std::max(0.5 * q, 0.0));
}

// Average pairwise agreement of two soft clusterings: each object pair
// contributes 1 minus the distance between its relation masses.
inline double rand_evidential(const SoftClustering& m1, const SoftClustering& m2,
                              MassMetricKind kind = MassMetricKind::JousselmeJaccard) {
  detail::require_same_n(m1.n(), m2.n());
  detail::require_pairable(m1.n());
  const std::size_t n = m1.n();
  double total = 0.0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      total += 1.0 - mass_metric(pair_relation_mass(m1, x, y), pair_relation_mass(m2, x, y), kind);
  return total / (static_cast<double>(n) * (n - 1) / 2.0);
}

// --- Hausdorff lift ---------------------------------------------------------

template <class T, class Dist>
double hausdorff(std::span<const T> a, std::span<const T> b, Dist&& d) {
  if (a.empty() || b.empty()) throw Error(Errc::EmptySet, "hausdorff of an empty set");
  double h = 0.0;
  auto oneWay = [&](std::span<const T> from, std::span<const T> to) {
    for (const auto& x : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& y : to) best = std::min(best, d(x, y));
      h = std::max(h, best);
    }
  };
  oneWay(a, b);
  oneWay(b, a);
  return h;
}

// --- axiom checking ---------------------------------------------------------

struct Counterexample {
  const char* axiom;
  std::size_t i, j, k;  // k = SIZE_MAX for pairwise axioms
  double dij, djk, dik;
};

struct AxiomReport {
  bool holdsM1 = true;   // d(x,x) = 0
  bool holdsM1b = true;  // d(x,y) = 0 implies x == y
  bool holdsM2 = true;   // x != y implies d(x,y) > 0
  bool holdsM3 = true;   // symmetry
  bool holdsM4 = true;   // triangle inequality
  bool isNormalized = true;
  double maxValue = 0.0;
  std::vector<Counterexample> counterexamples;

  bool is_metric() const { return holdsM1 && holdsM1b && holdsM2 && holdsM3 && holdsM4; }
  bool is_pseudo_metric() const { return holdsM1 && holdsM3 && holdsM4; }
  bool is_semi_metric() const { return holdsM1 && holdsM1b && holdsM2 && holdsM3; }
  bool is_meta_metric() const { return holdsM1b && holdsM2 && holdsM3 && holdsM4; }
};

// Exhaustive check over all pairs and ordered triples of the given points.
// eq decides which points count as "the same" for M1b/M2.
template <class T, class Dist, class Eq>
AxiomReport check_axioms(std::span<const T> pts, Dist&& d, Eq&& eq, double tol = kEqTol) {
  const std::size_t n = pts.size();
  AxiomReport rep;
  constexpr std::size_t kMaxPerAxiom = 4;
  std::size_t m1 = 0, m12 = 0, m3 = 0, m4 = 0;
  std::vector<std::vector<double>> D(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      D[i][j] = d(pts[i], pts[j]);
      rep.maxValue = std::max(rep.maxValue, D[i][j]);
      if (D[i][j] < -tol || D[i][j] > 1.0 + tol) rep.isNormalized = false;
    }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(D[i][i]) > tol) {
      rep.holdsM1 = false;
      if (m1++ < kMaxPerAxiom)
        rep.counterexamples.push_back({"M1", i, i, SIZE_MAX, D[i][i], 0, 0});
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(D[i][j] - D[j][i]) > tol) {
        rep.holdsM3 = false;
        if (m3++ < kMaxPerAxiom)
          rep.counterexamples.push_back({"M3", i, j, SIZE_MAX, D[i][j], D[j][i], 0});
      }
      if (D[i][j] <= tol && !eq(pts[i], pts[j])) {
        rep.holdsM1b = false;
        rep.holdsM2 = false;
        if (m12++ < kMaxPerAxiom)
          rep.counterexamples.push_back({"M1b/M2", i, j, SIZE_MAX, D[i][j], 0, 0});
      }
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (D[i][k] > D[i][j] + D[j][k] + tol) {
          rep.holdsM4 = false;
          if (m4++ < kMaxPerAxiom)
            rep.counterexamples.push_back({"M4", i, j, k, D[i][j], D[j][k], D[i][k]});
        }
      }
    }
  return rep;
}

// --- base distances and incremental trackers -------------------------------

enum class BaseMetric { RandDistance, PartitionDistance };

inline const char* base_metric_name(BaseMetric m) {
  return m == BaseMetric::RandDistance ? "rand" : "partition";
}

template <class L1, class L2>
double base_distance_labels(BaseMetric m, const L1& a, const L2& b, std::size_t k1, std::size_t k2) {
  if (m == BaseMetric::RandDistance) return 1.0 - rand_index_labels(a, b, k1, k2);
  return partition_distance_labels(a, b, k1, k2);
}

inline double base_distance(BaseMetric m, const HardClustering& c1, const HardClustering& c2) {
  return base_distance_labels(m, c1.labels, c2.labels, c1.k(), c2.k());
}

inline AxiomReport check_axioms_hard(std::span<const HardClustering> pts, BaseMetric m,
                                     double tol = kEqTol) {
  return check_axioms(
      pts, [m](const HardClustering& a, const HardClustering& b) { return base_distance(m, a, b); },
      [](const HardClustering& a, const HardClustering& b) { return equivalent(a, b); }, tol);
}

// Incremental trackers for enumeration. They hold the invariant that value()
// always reflects the label vectors last passed to reset()/changed(); the
// agreement and contingency counts are exact integers, so equal partitions
// yield bit-identical doubles.

class RandDistanceTracker {
 public:
  explicit RandDistanceTracker(std::size_t k1, std::size_t k2) : k1_(k1), k2_(k2) {}

  void reset(const PairLabels& labels) {
    n_ = labels.a.size();
    agree_ = detail::agreement_count(labels.a, labels.b, k1_, k2_);
  }

  void changed(const PairLabels& labels, int side, std::size_t x, std::uint8_t oldL,
               std::uint8_t newL) {
    if (oldL == newL) return;
    const auto& own = side == 0 ? labels.a : labels.b;
    const auto& other = side == 0 ? labels.b : labels.a;
    const std::uint8_t ox = other[x];
    for (std::size_t y = 0; y < n_; ++y) {
      if (y == x) continue;
      const bool so = own[y] == oldL;
      const bool sn = own[y] == newL;
      if (so == sn) continue;
      const bool t = other[y] == ox;
      agree_ += (sn == t) - (so == t);
    }
  }

  double value() const {
    return 1.0 - static_cast<double>(agree_) / (static_cast<double>(n_) * (n_ - 1) / 2.0);
  }

 private:
  std::size_t k1_, k2_;
  std::size_t n_ = 0;
  long long agree_ = 0;
};

class PartitionDistanceTracker {
 public:
  explicit PartitionDistanceTracker(std::size_t k1, std::size_t k2) : k1_(k1), k2_(k2) {}

  void reset(const PairLabels& labels) {
    n_ = labels.a.size();
    cont_.assign(k1_, std::vector<long long>(k2_, 0));
    for (std::size_t x = 0; x < n_; ++x) ++cont_[labels.a[x]][labels.b[x]];
  }

  void changed(const PairLabels& labels, int side, std::size_t x, std::uint8_t oldL,
               std::uint8_t newL) {
    if (oldL == newL) return;
    if (side == 0) {
      const std::uint8_t col = labels.b[x];
      --cont_[oldL][col];
      ++cont_[newL][col];
    } else {
      const std::uint8_t row = labels.a[x];
      --cont_[row][oldL];
      ++cont_[row][newL];
    }
  }

  double value() const {
    const long long moves = static_cast<long long>(n_) - solver_.max_weight(cont_);
    return static_cast<double>(moves) / (static_cast<double>(n_) - 1.0);
  }

 private:
  std::size_t k1_, k2_;
  std::size_t n_ = 0;
  std::vector<std::vector<long long>> cont_;
  mutable detail::HungarianSolver solver_;
};

}  // namespace softcmp
