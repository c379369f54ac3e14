#pragma once

// Monte-Carlo approximations of the distributional measures, with Hoeffding
// sample-size planning. Sampling is deterministic: each sample draws from its
// own counter-based stream keyed by (seed, sampleIndex), and results are
// reduced block-by-block in a fixed order, so the outcome is bit-identical
// for any thread count.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "softcmp/common.hpp"
#include "softcmp/core.hpp"
#include "softcmp/distributional.hpp"
#include "softcmp/errors.hpp"
#include "softcmp/metrics.hpp"
#include "softcmp/rng.hpp"

namespace softcmp {

// Smallest s with 2*exp(-2*s*eps^2) <= delta.
inline std::uint64_t required_samples(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0) || !(delta > 0.0) || !(delta < 1.0))
    throw Error(Errc::OutOfRange, "epsilon and delta must lie in (0, 1)");
  const double s = std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon));
  return s < 1.0 ? 1 : static_cast<std::uint64_t>(s);
}

// Half-width of the two-sided Hoeffding bound after s samples.
inline double hoeffding_epsilon(std::uint64_t s, double delta) {
  if (s == 0 || !(delta > 0.0) || !(delta < 1.0))
    throw Error(Errc::OutOfRange, "need s >= 1 and delta in (0, 1)");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(s)));
}

struct SamplePlan {
  std::uint64_t sampleCount = 0;  // 0 = derive from epsilon/delta
  double epsilon = 0.02;
  double delta = 0.05;
  std::uint64_t seed = 0;
  std::uint64_t innerSampleCount = 16;  // nested evidential mode only
  bool collectCdf = false;

  std::uint64_t samples() const {
    return sampleCount > 0 ? sampleCount : required_samples(epsilon, delta);
  }
};

struct ApproxResult {
  double lower = 0.0;
  double upper = 0.0;
  std::uint64_t samples = 0;
  double hoeffdingHalfWidth = 0.0;
  double elapsedSeconds = 0.0;
  bool nestedBiased = false;
  // empirical CDF of observed values (value, fraction <= value); filled on request
  std::vector<std::pair<double, double>> empiricalCdf;
};

// --- draws -------------------------------------------------------------------

// One focal set per object, chosen by mass.
inline void draw_rc_into(const SoftClustering& m, CounterRng& rng,
                         std::vector<std::uint64_t>& out) {
  out.resize(m.n());
  for (std::size_t x = 0; x < m.n(); ++x) {
    const auto& focal = m.mass_of(x).focal();
    double u = rng.next_unit();
    std::size_t pick = focal.size() - 1;
    for (std::size_t i = 0; i + 1 < focal.size(); ++i) {
      u -= focal[i].second;
      if (u < 0.0) {
        pick = i;
        break;
      }
    }
    out[x] = focal[pick].first;
  }
}

inline RoughClustering draw_rc(const SoftClustering& m, CounterRng& rng) {
  std::vector<std::uint64_t> regions;
  draw_rc_into(m, rng, regions);
  return RoughClustering(m.frame(), std::move(regions));
}

inline std::uint8_t nth_set_bit(std::uint64_t mask, std::uint64_t idx) {
  for (std::uint64_t i = 0; i < idx; ++i) mask &= mask - 1;
  return static_cast<std::uint8_t>(std::countr_zero(mask));
}

// Uniform element of each region.
inline void draw_compatible_into(std::span<const std::uint64_t> regions, CounterRng& rng,
                                 std::vector<std::uint8_t>& out) {
  out.resize(regions.size());
  for (std::size_t x = 0; x < regions.size(); ++x) {
    const int pc = std::popcount(regions[x]);
    out[x] = pc == 1 ? static_cast<std::uint8_t>(std::countr_zero(regions[x]))
                     : nth_set_bit(regions[x], rng.next_below(static_cast<std::uint64_t>(pc)));
  }
}

// Two-stage draw: focal set by mass, then uniform inside it. Reduces to a
// categorical draw for fuzzy objects and a uniform one for rough objects.
inline void draw_hard_into(const SoftClustering& m, CounterRng& rng,
                           std::vector<std::uint8_t>& out) {
  std::vector<std::uint64_t> regions;
  draw_rc_into(m, rng, regions);
  draw_compatible_into(regions, rng, out);
}

inline HardClustering draw_hard(const SoftClustering& m, CounterRng& rng) {
  std::vector<std::uint8_t> labels;
  draw_hard_into(m, rng, labels);
  return HardClustering(m.frame(), std::vector<std::uint32_t>(labels.begin(), labels.end()));
}

// --- deterministic blocked sampling engine -----------------------------------

namespace detail {

constexpr std::uint64_t kSampleBlock = 4096;

struct SampleAggregate {
  double meanLo = 0.0, meanHi = 0.0;
  double minLo = 0.0, maxHi = 0.0;
  std::uint64_t samples = 0;
  double elapsedSeconds = 0.0;
  std::vector<std::pair<double, double>> cdf;
};

// SampleFn: (sampleIndex, rng&) -> pair{lo, hi}. Each sample must touch only
// its own rng; block partials are merged in block order so thread count never
// changes the result.
template <class SampleFn>
SampleAggregate run_sampling(const SamplePlan& plan, unsigned threads, SampleFn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t s = plan.samples();
  const std::uint64_t nBlocks = (s + kSampleBlock - 1) / kSampleBlock;

  struct Block {
    double sumLo = 0.0, sumHi = 0.0;
    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    std::vector<double> values;
    std::exception_ptr error;
  };
  std::vector<Block> blocks(nBlocks);

  auto runBlock = [&](std::uint64_t b) {
    Block& st = blocks[b];
    try {
      const std::uint64_t end = std::min(s, (b + 1) * kSampleBlock);
      for (std::uint64_t i = b * kSampleBlock; i < end; ++i) {
        CounterRng rng(plan.seed, i);
        const auto [lo, hi] = fn(i, rng);
        st.sumLo += lo;
        st.sumHi += hi;
        st.mn = std::min(st.mn, lo);
        st.mx = std::max(st.mx, hi);
        if (plan.collectCdf) st.values.push_back(lo);
      }
    } catch (...) {
      st.error = std::current_exception();
    }
  };

  if (threads <= 1 || nBlocks <= 1) {
    for (std::uint64_t b = 0; b < nBlocks; ++b) runBlock(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    const unsigned nt = static_cast<unsigned>(std::min<std::uint64_t>(threads, nBlocks));
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t)
      pool.emplace_back([&] {
        for (std::uint64_t b = next.fetch_add(1); b < nBlocks; b = next.fetch_add(1)) runBlock(b);
      });
    for (auto& th : pool) th.join();
  }

  SampleAggregate agg;
  agg.samples = s;
  agg.minLo = std::numeric_limits<double>::infinity();
  agg.maxHi = -std::numeric_limits<double>::infinity();
  double sumLo = 0.0, sumHi = 0.0;
  for (const auto& st : blocks) {
    if (st.error) std::rethrow_exception(st.error);
    sumLo += st.sumLo;
    sumHi += st.sumHi;
    agg.minLo = std::min(agg.minLo, st.mn);
    agg.maxHi = std::max(agg.maxHi, st.mx);
  }
  agg.meanLo = sumLo / static_cast<double>(s);
  agg.meanHi = sumHi / static_cast<double>(s);

  if (plan.collectCdf) {
    std::vector<double> all;
    for (auto& st : blocks) all.insert(all.end(), st.values.begin(), st.values.end());
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size(); ++i)
      if (i + 1 == all.size() || all[i + 1] - all[i] > kEqTol)
        agg.cdf.emplace_back(all[i],
                             static_cast<double>(i + 1) / static_cast<double>(all.size()));
  }
  agg.elapsedSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return agg;
}

inline ApproxResult result_from(const SampleAggregate& agg, const SamplePlan& plan,
                                bool extremes) {
  ApproxResult out;
  out.lower = extremes ? agg.minLo : agg.meanLo;
  out.upper = extremes ? agg.maxHi : agg.meanHi;
  out.samples = agg.samples;
  out.hoeffdingHalfWidth = hoeffding_epsilon(agg.samples, plan.delta);
  out.elapsedSeconds = agg.elapsedSeconds;
  out.empiricalCdf = agg.cdf;
  return out;
}

}  // namespace detail

// --- rough interval, inner approximation -------------------------------------
//
// Samples compatible pairs uniformly; observed min/max lie inside the exact
// interval by construction.

inline ApproxResult approx_interval_rough(const RoughClustering& r1, const RoughClustering& r2,
                                          BaseMetric metric, const SamplePlan& plan,
                                          unsigned threads = 1) {
  detail::require_same_n(r1.n(), r2.n());
  const std::size_t k1 = r1.k(), k2 = r2.k();
  const auto agg = detail::run_sampling(plan, threads, [&](std::uint64_t, CounterRng& rng) {
    std::vector<std::uint8_t> a, b;
    draw_compatible_into(r1.regions, rng, a);
    draw_compatible_into(r2.regions, rng, b);
    const double d = base_distance_labels(metric, a, b, k1, k2);
    return std::pair{d, d};
  });
  return detail::result_from(agg, plan, /*extremes=*/true);
}

// --- fuzzy expectation --------------------------------------------------------

// DistFn: (span<const uint8_t> a, span<const uint8_t> b, size_t k1, size_t k2) -> double in [0,1]
template <class DistFn>
ApproxResult approx_expectation_fuzzy_with(const SoftClustering& f1, const SoftClustering& f2,
                                           DistFn&& dist, const SamplePlan& plan,
                                           unsigned threads = 1) {
  detail::require_same_n(f1.n(), f2.n());
  for (const auto* f : {&f1, &f2}) {
    const SCKind kind = classify(*f);
    if (kind != SCKind::Fuzzy && kind != SCKind::Hard)
      throw Error(Errc::NotFuzzy, "expectation sampling needs singleton focal sets");
  }
  const std::size_t k1 = f1.k(), k2 = f2.k();
  const auto agg = detail::run_sampling(plan, threads, [&](std::uint64_t, CounterRng& rng) {
    std::vector<std::uint8_t> a, b;
    draw_hard_into(f1, rng, a);
    draw_hard_into(f2, rng, b);
    const double d = dist(std::span<const std::uint8_t>(a), std::span<const std::uint8_t>(b),
                          k1, k2);
    if (d < -kEqTol || d > 1.0 + kEqTol)
      throw Error(Errc::BaseNotNormalized, "base distance left [0, 1]; normalize it first");
    return std::pair{d, d};
  });
  return detail::result_from(agg, plan, /*extremes=*/false);
}

inline ApproxResult approx_expectation_fuzzy(const SoftClustering& f1, const SoftClustering& f2,
                                             BaseMetric metric, const SamplePlan& plan,
                                             unsigned threads = 1) {
  return approx_expectation_fuzzy_with(
      f1, f2,
      [metric](std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, std::size_t k1,
               std::size_t k2) { return base_distance_labels(metric, a, b, k1, k2); },
      plan, threads);
}

// --- evidential expectations ----------------------------------------------------

enum class EvidentialSampleMode {
  ExactInner,  // exact interval per sampled focal pair (unbiased for both means)
  Nested,      // inner sampling of each focal pair's interval (biased narrower)
};

struct ApproxEvidentialResult {
  ApproxResult expectationOfBounds;  // means of per-pair interval endpoints
  ApproxResult extremes;             // min/max distance values seen (inner approximation)
};

namespace detail {

// DrawRc: (side 0/1, rng&, vector<uint64_t>& out)
template <class DrawRc>
ApproxEvidentialResult approx_evidential_impl(std::size_t n, std::size_t k1, std::size_t k2,
                                              BaseMetric metric, EvidentialSampleMode mode,
                                              const SamplePlan& plan, double pairBudget,
                                              unsigned threads, DrawRc&& draw) {
  SampleAggregate agg;
  if (mode == EvidentialSampleMode::ExactInner) {
    agg = run_sampling(plan, threads, [&](std::uint64_t, CounterRng& rng) {
      std::vector<std::uint64_t> ra, rb;
      draw(0, rng, ra);
      draw(1, rng, rb);
      const IntervalSummary iv = rough_interval_exact(ra, rb, k1, k2, metric, pairBudget);
      return std::pair{iv.lower, iv.upper};
    });
  } else {
    const std::uint64_t inner = std::max<std::uint64_t>(1, plan.innerSampleCount);
    agg = run_sampling(plan, threads, [&](std::uint64_t, CounterRng& rng) {
      std::vector<std::uint64_t> ra, rb;
      std::vector<std::uint8_t> a, b;
      draw(0, rng, ra);
      draw(1, rng, rb);
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (std::uint64_t j = 0; j < inner; ++j) {
        draw_compatible_into(ra, rng, a);
        draw_compatible_into(rb, rng, b);
        const double d = base_distance_labels(metric, a, b, k1, k2);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
      return std::pair{lo, hi};
    });
  }
  (void)n;
  ApproxEvidentialResult out;
  out.expectationOfBounds = result_from(agg, plan, /*extremes=*/false);
  out.extremes = result_from(agg, plan, /*extremes=*/true);
  out.expectationOfBounds.nestedBiased = out.extremes.nestedBiased =
      (mode == EvidentialSampleMode::Nested);
  return out;
}

}  // namespace detail

inline ApproxEvidentialResult approx_expectations_evidential(
    const SoftClustering& m1, const SoftClustering& m2, BaseMetric metric,
    const SamplePlan& plan, EvidentialSampleMode mode = EvidentialSampleMode::ExactInner,
    double pairBudget = kDefaultBudget, unsigned threads = 1) {
  detail::require_same_n(m1.n(), m2.n());
  return detail::approx_evidential_impl(
      m1.n(), m1.k(), m2.k(), metric, mode, plan, pairBudget, threads,
      [&](int side, CounterRng& rng, std::vector<std::uint64_t>& out) {
        draw_rc_into(side == 0 ? m1 : m2, rng, out);
      });
}

inline ApproxEvidentialResult approx_expectations_evidential(
    const RCDistribution& d1, const RCDistribution& d2, BaseMetric metric,
    const SamplePlan& plan, EvidentialSampleMode mode = EvidentialSampleMode::ExactInner,
    double pairBudget = kDefaultBudget, unsigned threads = 1) {
  detail::require_same_n(d1.n(), d2.n());
  auto drawFrom = [](const RCDistribution& d, CounterRng& rng, std::vector<std::uint64_t>& out) {
    double u = rng.next_unit() * d.mass_sum();
    std::size_t pick = d.focal.size() - 1;
    for (std::size_t i = 0; i + 1 < d.focal.size(); ++i) {
      u -= d.focal[i].mass;
      if (u < 0.0) {
        pick = i;
        break;
      }
    }
    out = d.focal[pick].regions;
  };
  return detail::approx_evidential_impl(
      d1.n(), d1.frame.size(), d2.frame.size(), metric, mode, plan, pairBudget, threads,
      [&](int side, CounterRng& rng, std::vector<std::uint64_t>& out) {
        drawFrom(side == 0 ? d1 : d2, rng, out);
      });
}

}  // namespace softcmp
