#pragma once

// Reference soft clusterers: k-means, fuzzy c-means, possibilistic c-means,
// rough k-means, and evidential c-means. These exist so the comparison
// pipeline has real producers of each clustering kind; they are deterministic
// given a seed and favor clarity over speed.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "softcmp/common.hpp"
#include "softcmp/core.hpp"
#include "softcmp/distributional.hpp"
#include "softcmp/errors.hpp"
#include "softcmp/rng.hpp"

namespace softcmp {

struct Dataset {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> values;  // row-major n*dim

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values).subspan(i * dim, dim);
  }
};

// Z-scores each feature column in place; constant columns are left centered.
inline void standardize(Dataset& ds) {
  for (std::size_t f = 0; f < ds.dim; ++f) {
    double mean = 0.0;
    for (std::size_t i = 0; i < ds.n; ++i) mean += ds.values[i * ds.dim + f];
    mean /= static_cast<double>(ds.n);
    double var = 0.0;
    for (std::size_t i = 0; i < ds.n; ++i) {
      const double d = ds.values[i * ds.dim + f] - mean;
      var += d * d;
    }
    var /= static_cast<double>(ds.n);
    const double scale = var > 0.0 ? 1.0 / std::sqrt(var) : 1.0;
    for (std::size_t i = 0; i < ds.n; ++i)
      ds.values[i * ds.dim + f] = (ds.values[i * ds.dim + f] - mean) * scale;
  }
}

struct FitOptions {
  std::uint32_t maxIter = 300;
  double tol = 1e-6;
  std::uint64_t seed = 0;
};

namespace detail {

inline double sqdist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline void check_fit_args(const Dataset& ds, std::size_t k) {
  if (ds.n == 0 || ds.dim == 0) throw Error(Errc::DegenerateData, "empty dataset");
  if (k == 0 || k > kMaxClusters || k > ds.n)
    throw Error(Errc::DegenerateData,
                "cluster count must be in [1, min(n, " + std::to_string(kMaxClusters) + ")]");
}

// k-means++ seeding
inline std::vector<double> seed_centers(const Dataset& ds, std::size_t k, CounterRng& rng) {
  std::vector<double> centers(k * ds.dim);
  const std::size_t first = rng.next_below(ds.n);
  std::copy_n(ds.row(first).data(), ds.dim, centers.begin());
  std::vector<double> d2(ds.n, std::numeric_limits<double>::infinity());
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < ds.n; ++i) {
      const double d = sqdist(ds.row(i), std::span<const double>(centers).subspan((c - 1) * ds.dim, ds.dim));
      d2[i] = std::min(d2[i], d);
      total += d2[i];
    }
    std::size_t pick;
    if (total <= 0.0) {
      pick = rng.next_below(ds.n);
    } else {
      double u = rng.next_unit() * total;
      pick = ds.n - 1;
      for (std::size_t i = 0; i < ds.n; ++i) {
        u -= d2[i];
        if (u < 0.0) {
          pick = i;
          break;
        }
      }
    }
    std::copy_n(ds.row(pick).data(), ds.dim, centers.begin() + c * ds.dim);
  }
  return centers;
}

inline std::span<const double> center_row(const std::vector<double>& centers, std::size_t dim,
                                          std::size_t c) {
  return std::span<const double>(centers).subspan(c * dim, dim);
}

// Gaussian elimination with partial pivoting on [A | B], A is k*k, B is k*m.
// Solves A X = B in place; X lands in B. Throws on a singular system.
inline void solve_linear(std::size_t k, std::vector<double>& A, std::vector<double>& B,
                         std::size_t m) {
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(A[r * k + col]) > std::abs(A[piv * k + col])) piv = r;
    if (std::abs(A[piv * k + col]) < 1e-12)
      throw Error(Errc::DegenerateData, "singular system in center update");
    if (piv != col) {
      for (std::size_t j = 0; j < k; ++j) std::swap(A[col * k + j], A[piv * k + j]);
      for (std::size_t j = 0; j < m; ++j) std::swap(B[col * m + j], B[piv * m + j]);
    }
    const double inv = 1.0 / A[col * k + col];
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = A[r * k + col] * inv;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < k; ++j) A[r * k + j] -= f * A[col * k + j];
      for (std::size_t j = 0; j < m; ++j) B[r * m + j] -= f * B[col * m + j];
    }
  }
  for (std::size_t r = 0; r < k; ++r) {
    const double inv = 1.0 / A[r * k + r];
    for (std::size_t j = 0; j < m; ++j) B[r * m + j] *= inv;
  }
}

}  // namespace detail

// --- k-means -------------------------------------------------------------------

struct KMeansResult {
  std::size_t k = 0;
  std::vector<std::uint32_t> labels;
  std::vector<double> centers;  // k*dim
  double objective = 0.0;       // sum of squared distances to assigned centers
  std::uint32_t iterations = 0;
  bool converged = false;

  HardClustering to_hard() const { return HardClustering(Frame(k), labels); }
};

inline KMeansResult kmeans(const Dataset& ds, std::size_t k, const FitOptions& opt = {}) {
  detail::check_fit_args(ds, k);
  CounterRng rng(opt.seed, 0x6b6d65616e73);
  KMeansResult res;
  res.k = k;
  res.centers = detail::seed_centers(ds, k, rng);
  res.labels.assign(ds.n, 0);
  std::vector<double> next(k * ds.dim);
  std::vector<std::size_t> count(k);

  for (std::uint32_t it = 0; it < opt.maxIter; ++it) {
    res.iterations = it + 1;
    std::fill(next.begin(), next.end(), 0.0);
    std::fill(count.begin(), count.end(), 0u);
    res.objective = 0.0;
    for (std::size_t i = 0; i < ds.n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::uint32_t bestC = 0;
      for (std::size_t c = 0; c < k; ++c) {
        const double d = detail::sqdist(ds.row(i), detail::center_row(res.centers, ds.dim, c));
        if (d < best) {
          best = d;
          bestC = static_cast<std::uint32_t>(c);
        }
      }
      res.labels[i] = bestC;
      res.objective += best;
      ++count[bestC];
      const auto r = ds.row(i);
      for (std::size_t f = 0; f < ds.dim; ++f) next[bestC * ds.dim + f] += r[f];
    }
    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (count[c] == 0) {
        // reseed an emptied cluster at the point farthest from its center
        std::size_t far = 0;
        double fd = -1.0;
        for (std::size_t i = 0; i < ds.n; ++i) {
          const double d =
              detail::sqdist(ds.row(i), detail::center_row(res.centers, ds.dim, res.labels[i]));
          if (d > fd) {
            fd = d;
            far = i;
          }
        }
        std::copy_n(ds.row(far).data(), ds.dim, next.begin() + c * ds.dim);
        count[c] = 1;
      }
      for (std::size_t f = 0; f < ds.dim; ++f) {
        const double nv = next[c * ds.dim + f] / static_cast<double>(count[c]);
        shift = std::max(shift, std::abs(nv - res.centers[c * ds.dim + f]));
        res.centers[c * ds.dim + f] = nv;
      }
    }
    if (shift < opt.tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

// --- fuzzy c-means ----------------------------------------------------------------

struct FuzzyCMeansResult {
  std::size_t n = 0, k = 0;
  std::vector<double> memberships;  // n*k, rows sum to 1
  std::vector<double> centers;
  double objective = 0.0;
  std::uint32_t iterations = 0;
  bool converged = false;

  SoftClustering to_soft() const {
    std::vector<MassFunction> masses;
    masses.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<MassFunction::Entry> entries;
      for (std::size_t c = 0; c < k; ++c)
        if (memberships[i * k + c] > 0.0)
          entries.emplace_back(std::uint64_t{1} << c, memberships[i * k + c]);
      masses.push_back(MassFunction::validated(std::move(entries), k));
    }
    return SoftClustering(Frame(k), std::move(masses));
  }
};

inline FuzzyCMeansResult fuzzy_cmeans(const Dataset& ds, std::size_t k, double m = 2.0,
                                      const FitOptions& opt = {}) {
  detail::check_fit_args(ds, k);
  if (!(m > 1.0)) throw Error(Errc::OutOfRange, "fuzzifier must exceed 1");
  CounterRng rng(opt.seed, 0x66636d65616e73);
  FuzzyCMeansResult res;
  res.n = ds.n;
  res.k = k;
  res.centers = detail::seed_centers(ds, k, rng);
  res.memberships.assign(ds.n * k, 0.0);
  const double uexp = 1.0 / (m - 1.0);  // exponent on squared-distance ratios
  std::vector<double> d2(k);

  for (std::uint32_t it = 0; it < opt.maxIter; ++it) {
    res.iterations = it + 1;
    res.objective = 0.0;
    for (std::size_t i = 0; i < ds.n; ++i) {
      int zero = -1;
      for (std::size_t c = 0; c < k; ++c) {
        d2[c] = detail::sqdist(ds.row(i), detail::center_row(res.centers, ds.dim, c));
        if (d2[c] < 1e-300 && zero < 0) zero = static_cast<int>(c);
      }
      double* u = &res.memberships[i * k];
      if (zero >= 0) {
        std::fill_n(u, k, 0.0);
        u[zero] = 1.0;
      } else {
        for (std::size_t c = 0; c < k; ++c) {
          double denom = 0.0;
          for (std::size_t q = 0; q < k; ++q) denom += std::pow(d2[c] / d2[q], uexp);
          u[c] = 1.0 / denom;
        }
      }
      for (std::size_t c = 0; c < k; ++c) res.objective += std::pow(u[c], m) * d2[c];
    }
    // center update
    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      double wsum = 0.0;
      std::vector<double> num(ds.dim, 0.0);
      for (std::size_t i = 0; i < ds.n; ++i) {
        const double w = std::pow(res.memberships[i * k + c], m);
        wsum += w;
        const auto r = ds.row(i);
        for (std::size_t f = 0; f < ds.dim; ++f) num[f] += w * r[f];
      }
      if (wsum <= 0.0) continue;
      for (std::size_t f = 0; f < ds.dim; ++f) {
        const double nv = num[f] / wsum;
        shift = std::max(shift, std::abs(nv - res.centers[c * ds.dim + f]));
        res.centers[c * ds.dim + f] = nv;
      }
    }
    if (shift < opt.tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

// --- possibilistic c-means ---------------------------------------------------------

struct PossibilisticCMeansResult {
  std::size_t n = 0, k = 0;
  std::vector<double> typicalities;  // n*k, not row-normalized
  std::vector<double> centers;
  std::vector<double> eta;  // per-cluster bandwidth
  double objective = 0.0;
  std::uint32_t iterations = 0;
  bool converged = false;

  // possibility degrees: each row rescaled so its max is 1
  std::vector<double> possibility_row(std::size_t i) const {
    std::vector<double> pi(typicalities.begin() + static_cast<std::ptrdiff_t>(i * k),
                           typicalities.begin() + static_cast<std::ptrdiff_t>((i + 1) * k));
    const double mx = *std::max_element(pi.begin(), pi.end());
    if (mx > 0.0)
      for (double& v : pi) v /= mx;
    return pi;
  }

  SoftClustering to_soft() const {
    std::vector<MassFunction> masses;
    masses.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::vector<double> pi = possibility_row(i);
      masses.push_back(possibility_to_consonant(pi));
    }
    return SoftClustering(Frame(k), std::move(masses));
  }
};

inline PossibilisticCMeansResult possibilistic_cmeans(const Dataset& ds, std::size_t k,
                                                      double m = 2.0, const FitOptions& opt = {}) {
  detail::check_fit_args(ds, k);
  if (!(m > 1.0)) throw Error(Errc::OutOfRange, "fuzzifier must exceed 1");
  // bootstrap centers and bandwidths from a fuzzy run
  const FuzzyCMeansResult fcm = fuzzy_cmeans(ds, k, m, opt);
  PossibilisticCMeansResult res;
  res.n = ds.n;
  res.k = k;
  res.centers = fcm.centers;
  // bandwidths from the bootstrap's argmax partition: mean squared distance
  // within each crisp cluster. The membership-weighted estimate degenerates
  // for large fuzzifiers: weights go uniform, eta inflates to the global
  // scale, and every center drifts to the grand mean.
  res.eta.assign(k, 0.0);
  std::vector<std::size_t> cnt(k, 0);
  for (std::size_t i = 0; i < ds.n; ++i) {
    std::size_t arg = 0;
    for (std::size_t c = 1; c < k; ++c)
      if (fcm.memberships[i * k + c] > fcm.memberships[i * k + arg]) arg = c;
    res.eta[arg] += detail::sqdist(ds.row(i), detail::center_row(res.centers, ds.dim, arg));
    ++cnt[arg];
  }
  for (std::size_t c = 0; c < k; ++c) {
    res.eta[c] = cnt[c] > 0 ? res.eta[c] / cnt[c] : 1.0;
    if (res.eta[c] <= 0.0) res.eta[c] = 1e-12;
  }

  res.typicalities.assign(ds.n * k, 0.0);
  const double expo = 1.0 / (m - 1.0);
  for (std::uint32_t it = 0; it < opt.maxIter; ++it) {
    res.iterations = it + 1;
    res.objective = 0.0;
    for (std::size_t i = 0; i < ds.n; ++i)
      for (std::size_t c = 0; c < k; ++c) {
        const double d2 = detail::sqdist(ds.row(i), detail::center_row(res.centers, ds.dim, c));
        const double t = 1.0 / (1.0 + std::pow(d2 / res.eta[c], expo));
        res.typicalities[i * k + c] = t;
        res.objective += std::pow(t, m) * d2 + res.eta[c] * std::pow(1.0 - t, m);
      }
    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      double tw = 0.0;
      std::vector<double> num(ds.dim, 0.0);
      for (std::size_t i = 0; i < ds.n; ++i) {
        const double w = std::pow(res.typicalities[i * k + c], m);
        tw += w;
        const auto r = ds.row(i);
        for (std::size_t f = 0; f < ds.dim; ++f) num[f] += w * r[f];
      }
      if (tw <= 0.0) continue;
      for (std::size_t f = 0; f < ds.dim; ++f) {
        const double nv = num[f] / tw;
        shift = std::max(shift, std::abs(nv - res.centers[c * ds.dim + f]));
        res.centers[c * ds.dim + f] = nv;
      }
    }
    if (shift < opt.tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

// --- rough k-means ------------------------------------------------------------------

struct RoughKMeansResult {
  std::size_t n = 0, k = 0;
  std::vector<std::uint64_t> regions;  // cluster-set bitmask per object
  std::vector<double> centers;
  double objective = 0.0;
  std::uint32_t iterations = 0;
  bool converged = false;
  double epsilon = 0.0;
  double lowerWeight = 0.0;

  RoughClustering to_rough() const { return RoughClustering(Frame(k), regions); }
  SoftClustering to_soft() const { return to_rough().to_soft(); }
};

// Objects whose second-best center is within ratio `epsilon` of the best are
// assigned to the boundary of every such cluster; the rest go to one lower
// approximation. Centers mix lower and boundary means with weight `lowerWeight`.
inline RoughKMeansResult rough_kmeans(const Dataset& ds, std::size_t k, double epsilon = 1.1,
                                      double lowerWeight = 0.7, const FitOptions& opt = {}) {
  detail::check_fit_args(ds, k);
  if (!(epsilon >= 1.0)) throw Error(Errc::OutOfRange, "threshold ratio must be at least 1");
  if (!(lowerWeight >= 0.0) || !(lowerWeight <= 1.0))
    throw Error(Errc::OutOfRange, "lower weight must lie in [0, 1]");
  CounterRng rng(opt.seed, 0x726b6d65616e73);
  RoughKMeansResult res;
  res.n = ds.n;
  res.k = k;
  res.epsilon = epsilon;
  res.lowerWeight = lowerWeight;
  res.centers = detail::seed_centers(ds, k, rng);
  res.regions.assign(ds.n, 0);
  const double e2 = epsilon * epsilon;  // squared-distance ratio threshold
  std::vector<double> d2(k);
  std::vector<double> lowerSum(k * ds.dim), boundSum(k * ds.dim);
  std::vector<std::size_t> lowerCount(k), boundCount(k);

  for (std::uint32_t it = 0; it < opt.maxIter; ++it) {
    res.iterations = it + 1;
    std::fill(lowerSum.begin(), lowerSum.end(), 0.0);
    std::fill(boundSum.begin(), boundSum.end(), 0.0);
    std::fill(lowerCount.begin(), lowerCount.end(), 0u);
    std::fill(boundCount.begin(), boundCount.end(), 0u);
    res.objective = 0.0;
    for (std::size_t i = 0; i < ds.n; ++i) {
      std::size_t bestC = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        d2[c] = detail::sqdist(ds.row(i), detail::center_row(res.centers, ds.dim, c));
        if (d2[c] < best) {
          best = d2[c];
          bestC = c;
        }
      }
      std::uint64_t region = std::uint64_t{1} << bestC;
      for (std::size_t c = 0; c < k; ++c)
        if (c != bestC && d2[c] <= best * e2) region |= std::uint64_t{1} << c;
      res.regions[i] = region;
      const auto r = ds.row(i);
      if (std::popcount(region) == 1) {
        ++lowerCount[bestC];
        for (std::size_t f = 0; f < ds.dim; ++f) lowerSum[bestC * ds.dim + f] += r[f];
        res.objective += lowerWeight * best;
      } else {
        double meanD2 = 0.0;
        for (std::uint64_t rem = region; rem;) {
          const std::size_t c = static_cast<std::size_t>(std::countr_zero(rem));
          rem &= rem - 1;
          ++boundCount[c];
          for (std::size_t f = 0; f < ds.dim; ++f) boundSum[c * ds.dim + f] += r[f];
          meanD2 += d2[c];
        }
        res.objective += (1.0 - lowerWeight) * meanD2 / std::popcount(region);
      }
    }
    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t f = 0; f < ds.dim; ++f) {
        double nv;
        const bool hasLower = lowerCount[c] > 0, hasBound = boundCount[c] > 0;
        const double lm = hasLower ? lowerSum[c * ds.dim + f] / lowerCount[c] : 0.0;
        const double bm = hasBound ? boundSum[c * ds.dim + f] / boundCount[c] : 0.0;
        if (hasLower && hasBound)
          nv = lowerWeight * lm + (1.0 - lowerWeight) * bm;
        else if (hasLower)
          nv = lm;
        else if (hasBound)
          nv = bm;
        else
          nv = res.centers[c * ds.dim + f];
        shift = std::max(shift, std::abs(nv - res.centers[c * ds.dim + f]));
        res.centers[c * ds.dim + f] = nv;
      }
    }
    if (shift < opt.tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

// --- evidential c-means ---------------------------------------------------------------

struct EvidentialCMeansResult {
  std::size_t n = 0, k = 0;
  std::vector<std::uint64_t> focalMasks;  // index 0 is the empty set
  std::vector<double> masses;             // n * focalMasks.size()
  std::vector<double> centers;            // singleton centers, k*dim
  double objective = 0.0;
  std::uint32_t iterations = 0;
  bool converged = false;

  SoftClustering to_soft(EmptySetPolicy policy = EmptySetPolicy::RedistributeOmega) const {
    const std::size_t nf = focalMasks.size();
    std::vector<MassFunction> out;
    out.reserve(n);
    ValidateOptions vo;
    vo.emptySet = policy;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<MassFunction::Entry> entries;
      for (std::size_t j = 0; j < nf; ++j)
        if (masses[i * nf + j] > 0.0) entries.emplace_back(focalMasks[j], masses[i * nf + j]);
      out.push_back(MassFunction::validated(std::move(entries), k, vo));
    }
    return SoftClustering(Frame(k), std::move(out));
  }
};

// Credal partitioning over all subsets of the frame. `alpha` penalizes large
// sets, `beta` is the fuzzifier, `delta` is the outlier distance feeding the
// empty-set mass.
inline EvidentialCMeansResult evidential_cmeans(const Dataset& ds, std::size_t k,
                                                double alpha = 1.0, double beta = 2.0,
                                                double delta = 10.0, const FitOptions& opt = {}) {
  detail::check_fit_args(ds, k);
  if (k > 20) throw Error(Errc::BudgetExceeded, "credal partition needs 2^k focal sets; k > 20 refused");
  if (!(beta > 1.0)) throw Error(Errc::OutOfRange, "fuzzifier must exceed 1");
  if (!(delta > 0.0)) throw Error(Errc::OutOfRange, "outlier distance must be positive");
  CounterRng rng(opt.seed, 0x65636d65616e73);
  EvidentialCMeansResult res;
  res.n = ds.n;
  res.k = k;
  res.centers = detail::seed_centers(ds, k, rng);

  const std::size_t nf = (std::size_t{1} << k);  // focal sets, mask value = index
  res.focalMasks.resize(nf);
  for (std::size_t j = 0; j < nf; ++j) res.focalMasks[j] = j;
  res.masses.assign(ds.n * nf, 0.0);

  std::vector<double> setCenters(nf * ds.dim);  // index 0 unused
  std::vector<double> card(nf), cardA(nf), cardA1(nf), cardA2(nf);
  for (std::size_t j = 1; j < nf; ++j) {
    card[j] = std::popcount(static_cast<std::uint64_t>(j));
    cardA[j] = std::pow(card[j], alpha);
    cardA1[j] = std::pow(card[j], alpha - 1.0);
    cardA2[j] = std::pow(card[j], alpha - 2.0);
  }
  const double mexp = -1.0 / (beta - 1.0);
  const double deltaTerm = std::pow(delta * delta, mexp);
  std::vector<double> H(k * k), B(k * ds.dim), d2(nf);

  for (std::uint32_t it = 0; it < opt.maxIter; ++it) {
    res.iterations = it + 1;
    // set centers = means of member singleton centers
    for (std::size_t j = 1; j < nf; ++j) {
      double* sc = &setCenters[j * ds.dim];
      std::fill_n(sc, ds.dim, 0.0);
      for (std::uint64_t rem = j; rem;) {
        const std::size_t c = static_cast<std::size_t>(std::countr_zero(rem));
        rem &= rem - 1;
        for (std::size_t f = 0; f < ds.dim; ++f) sc[f] += res.centers[c * ds.dim + f];
      }
      for (std::size_t f = 0; f < ds.dim; ++f) sc[f] /= card[j];
    }
    // mass update
    res.objective = 0.0;
    for (std::size_t i = 0; i < ds.n; ++i) {
      double denom = deltaTerm;
      int zero = -1;
      for (std::size_t j = 1; j < nf; ++j) {
        d2[j] = detail::sqdist(ds.row(i),
                               std::span<const double>(setCenters).subspan(j * ds.dim, ds.dim));
        if (d2[j] < 1e-300 && zero < 0) zero = static_cast<int>(j);
      }
      double* mi = &res.masses[i * nf];
      std::fill_n(mi, nf, 0.0);
      if (zero >= 0) {
        mi[zero] = 1.0;
      } else {
        for (std::size_t j = 1; j < nf; ++j) denom += std::pow(cardA[j] * d2[j], mexp);
        for (std::size_t j = 1; j < nf; ++j) mi[j] = std::pow(cardA[j] * d2[j], mexp) / denom;
        double used = 0.0;
        for (std::size_t j = 1; j < nf; ++j) used += mi[j];
        mi[0] = std::max(0.0, 1.0 - used);
      }
      for (std::size_t j = 1; j < nf; ++j)
        res.objective += cardA[j] * std::pow(mi[j], beta) * d2[j];
      res.objective += delta * delta * std::pow(mi[0], beta);
    }
    // center update: solve H V = B
    std::fill(H.begin(), H.end(), 0.0);
    std::fill(B.begin(), B.end(), 0.0);
    for (std::size_t i = 0; i < ds.n; ++i) {
      const double* mi = &res.masses[i * nf];
      const auto r = ds.row(i);
      for (std::size_t j = 1; j < nf; ++j) {
        if (mi[j] <= 0.0) continue;
        const double mb = std::pow(mi[j], beta);
        const double w1 = cardA1[j] * mb, w2 = cardA2[j] * mb;
        for (std::uint64_t rl = j; rl;) {
          const std::size_t l = static_cast<std::size_t>(std::countr_zero(rl));
          rl &= rl - 1;
          for (std::size_t f = 0; f < ds.dim; ++f) B[l * ds.dim + f] += w1 * r[f];
          for (std::uint64_t rq = j; rq;) {
            const std::size_t q = static_cast<std::size_t>(std::countr_zero(rq));
            rq &= rq - 1;
            H[l * k + q] += w2;
          }
        }
      }
    }
    std::vector<double> A = H, X = B;
    detail::solve_linear(k, A, X, ds.dim);
    double shift = 0.0;
    for (std::size_t c = 0; c < k * ds.dim; ++c) {
      shift = std::max(shift, std::abs(X[c] - res.centers[c]));
      res.centers[c] = X[c];
    }
    if (shift < opt.tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace softcmp
