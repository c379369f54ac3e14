#pragma once

// Mixed-radix enumeration over per-object candidate clusters, plus partition
// enumeration via restricted growth strings. The pair enumerator is the
// workhorse behind every exact distributional computation: it walks the
// cartesian product of two compatible-clustering sets while notifying a
// tracker of single-label changes, so distance values can be maintained in
// amortized constant label updates per visited item.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "softcmp/common.hpp"
#include "softcmp/errors.hpp"

namespace softcmp {

// Saturating product of region sizes; the exact value only matters below any
// realistic budget.
inline double count_product(std::span<const std::uint64_t> regions) {
  double p = 1.0;
  for (auto r : regions) {
    p *= static_cast<double>(std::popcount(r));
    if (p > 1e300) return 1e300;
  }
  return p;
}

inline void check_budget(double count, double budget, const char* what) {
  if (count > budget) throw BudgetExceededError(count, budget, what);
}

struct PairLabels {
  std::vector<std::uint8_t> a, b;
  std::span<const std::uint8_t> side(int s) const { return s == 0 ? a : b; }
};

namespace detail {

struct Digit {
  std::uint8_t side;                  // 0 or 1
  std::uint32_t object;
  std::vector<std::uint8_t> choices;  // candidate cluster indices, ascending
};

inline std::vector<std::uint8_t> mask_bits(std::uint64_t mask) {
  std::vector<std::uint8_t> out;
  while (mask) {
    out.push_back(static_cast<std::uint8_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

// Fills labels with the first choice per object and returns the variable
// digits sorted by ascending radix.
inline std::vector<Digit> prepare_digits(std::span<const std::uint64_t> r1,
                                         std::span<const std::uint64_t> r2, PairLabels& labels) {
  std::vector<Digit> digits;
  auto scan = [&digits](std::span<const std::uint64_t> regions, std::vector<std::uint8_t>& out,
                        std::uint8_t side) {
    out.resize(regions.size());
    for (std::uint32_t x = 0; x < regions.size(); ++x) {
      if (regions[x] == 0) throw Error(Errc::EmptyFocalSet, "empty region in rough clustering");
      auto bits = mask_bits(regions[x]);
      out[x] = bits.front();
      if (bits.size() > 1) digits.push_back(Digit{side, x, std::move(bits)});
    }
  };
  scan(r1, labels.a, 0);
  scan(r2, labels.b, 1);
  std::stable_sort(digits.begin(), digits.end(),
                   [](const Digit& l, const Digit& r) { return l.choices.size() < r.choices.size(); });
  return digits;
}

}  // namespace detail

// Tracker concept:
//   void reset(const PairLabels&);
//   void changed(const PairLabels&, int side, std::size_t object,
//                std::uint8_t oldLabel, std::uint8_t newLabel);   (labels already updated)
// Visit is called once per enumerated pair, after the tracker is current.
template <class Tracker, class Visit>
void for_each_compatible_pair(std::span<const std::uint64_t> r1, std::span<const std::uint64_t> r2,
                              Tracker& tracker, Visit&& visit, double budget = kDefaultBudget) {
  check_budget(count_product(r1) * count_product(r2), budget, "compatible clustering pairs");
  PairLabels labels;
  auto digits = detail::prepare_digits(r1, r2, labels);
  tracker.reset(labels);
  std::vector<std::uint32_t> pos(digits.size(), 0);

  auto apply = [&](std::size_t d, std::uint32_t p) {
    const auto& dig = digits[d];
    auto& lab = dig.side == 0 ? labels.a[dig.object] : labels.b[dig.object];
    const std::uint8_t old = lab;
    lab = dig.choices[p];
    tracker.changed(labels, dig.side, dig.object, old, dig.choices[p]);
  };

  visit(std::as_const(tracker));
  while (true) {
    std::size_t i = 0;
    while (i < digits.size() && pos[i] + 1 == digits[i].choices.size()) ++i;
    if (i == digits.size()) return;
    for (std::size_t j = 0; j < i; ++j) {
      pos[j] = 0;
      apply(j, 0);
    }
    ++pos[i];
    apply(i, pos[i]);
    visit(std::as_const(tracker));
  }
}

// Single-sided version: enumerates the clusterings compatible with one region
// vector; visit receives the current label vector.
template <class Visit>
void for_each_compatible(std::span<const std::uint64_t> regions, Visit&& visit,
                         double budget = kDefaultBudget) {
  check_budget(count_product(regions), budget, "compatible clusterings");
  PairLabels labels;
  std::vector<std::uint64_t> empty;
  auto digits = detail::prepare_digits(regions, empty, labels);
  std::vector<std::uint32_t> pos(digits.size(), 0);
  visit(std::span<const std::uint8_t>(labels.a));
  while (true) {
    std::size_t i = 0;
    while (i < digits.size() && pos[i] + 1 == digits[i].choices.size()) ++i;
    if (i == digits.size()) return;
    for (std::size_t j = 0; j < i; ++j) {
      pos[j] = 0;
      labels.a[digits[j].object] = digits[j].choices[0];
    }
    ++pos[i];
    labels.a[digits[i].object] = digits[i].choices[pos[i]];
    visit(std::span<const std::uint8_t>(labels.a));
  }
}

// Enumerates every partition of {0..n-1} as a canonical label vector
// (restricted growth string). Bell(n) items.
template <class Visit>
void for_each_partition(std::size_t n, Visit&& visit) {
  std::vector<std::uint32_t> a(n, 0);
  if (n == 0) return;
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t maxUsed) -> void {
    if (i == n) {
      visit(std::span<const std::uint32_t>(a));
      return;
    }
    for (std::uint32_t v = 0; v <= maxUsed + 1 && v < kMaxClusters; ++v) {
      a[i] = v;
      self(self, i + 1, std::max(maxUsed, v));
    }
  };
  a[0] = 0;
  rec(rec, 1, 0);
}

}  // namespace softcmp
