#pragma once

// Seeded random instance generators for the property tests. Uses std::mt19937_64
// directly so the generated inputs do not depend on the library's own RNG.

#include <cstdint>
#include <random>
#include <vector>

#include <softcmp/core.hpp>
#include <softcmp/distributional.hpp>

namespace gen {

using namespace softcmp;

using Rng = std::mt19937_64;

inline std::uint32_t below(Rng& rng, std::uint32_t n) {
  return static_cast<std::uint32_t>(std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng));
}

inline double unit(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline HardClustering random_hard(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::uint32_t> labels(n);
  for (auto& l : labels) l = below(rng, static_cast<std::uint32_t>(k));
  return HardClustering(Frame(k), std::move(labels));
}

// nonempty per-object regions; pWide = chance of more than one cluster
inline RoughClustering random_rough(Rng& rng, std::size_t n, std::size_t k, double pWide = 0.5) {
  std::vector<std::uint64_t> regions(n);
  for (auto& r : regions) {
    const std::uint64_t one = std::uint64_t{1} << below(rng, static_cast<std::uint32_t>(k));
    if (unit(rng) >= pWide) {
      r = one;
      continue;
    }
    std::uint64_t extra = 0;
    for (std::size_t c = 0; c < k; ++c)
      if (unit(rng) < 0.5) extra |= std::uint64_t{1} << c;
    r = one | extra;
  }
  return RoughClustering(Frame(k), std::move(regions));
}

inline SoftClustering random_fuzzy(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::vector<MassFunction::Entry>> raw(n);
  for (auto& row : raw) {
    double sum = 0.0;
    std::vector<double> u(k);
    for (auto& v : u) {
      v = -std::log(1.0 - unit(rng) + 1e-12);  // exponential -> Dirichlet(1,..,1)
      sum += v;
    }
    for (std::size_t c = 0; c < k; ++c) row.emplace_back(std::uint64_t{1} << c, u[c] / sum);
  }
  return validate_soft_clustering(Frame(k), std::move(raw));
}

// contour with one certain cluster, the rest arbitrary; consonant masses
inline SoftClustering random_possibilistic(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::vector<MassFunction::Entry>> raw(n);
  for (auto& row : raw) {
    std::vector<double> pi(k);
    for (auto& v : pi) v = unit(rng);
    pi[below(rng, static_cast<std::uint32_t>(k))] = 1.0;
    const MassFunction mf = possibility_to_consonant(pi);
    row.assign(mf.focal().begin(), mf.focal().end());
  }
  return validate_soft_clustering(Frame(k), std::move(raw));
}

// per object up to maxFocal distinct nonempty focal sets with random masses
inline SoftClustering random_evidential(Rng& rng, std::size_t n, std::size_t k,
                                        std::size_t maxFocal = 2) {
  const std::uint64_t top = (std::uint64_t{1} << k) - 1;
  std::vector<std::vector<MassFunction::Entry>> raw(n);
  for (auto& row : raw) {
    const std::size_t f = 1 + below(rng, static_cast<std::uint32_t>(maxFocal));
    std::vector<std::uint64_t> sets;
    while (sets.size() < f) {
      const std::uint64_t s = 1 + below(rng, static_cast<std::uint32_t>(top));
      bool dup = false;
      for (auto t : sets) dup = dup || t == s;
      if (!dup) sets.push_back(s);
    }
    double sum = 0.0;
    std::vector<double> m(sets.size());
    for (auto& v : m) {
      v = 0.05 + unit(rng);
      sum += v;
    }
    for (std::size_t i = 0; i < sets.size(); ++i) row.emplace_back(sets[i], m[i] / sum);
  }
  return validate_soft_clustering(Frame(k), std::move(raw));
}

// all mass functions over the nonempty subsets of k clusters whose masses are
// multiples of `step` summing to 1
inline std::vector<std::vector<MassFunction::Entry>> dyadic_mass_functions(std::size_t k,
                                                                           int steps = 4) {
  const std::uint64_t top = (std::uint64_t{1} << k) - 1;
  std::vector<std::uint64_t> sets;
  for (std::uint64_t s = 1; s <= top; ++s) sets.push_back(s);
  std::vector<std::vector<MassFunction::Entry>> out;
  std::vector<int> units(sets.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == sets.size()) {
      units[i] = left;
      std::vector<MassFunction::Entry> mf;
      for (std::size_t j = 0; j < sets.size(); ++j)
        if (units[j] > 0) mf.emplace_back(sets[j], units[j] / static_cast<double>(steps));
      out.push_back(std::move(mf));
      return;
    }
    for (int u = 0; u <= left; ++u) {
      units[i] = u;
      self(self, i + 1, left - u);
    }
  };
  rec(rec, 0, steps);
  return out;
}

// every possible label vector; every possible nonempty-region vector
inline std::vector<std::vector<std::uint32_t>> all_label_vectors(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur(n, 0);
  auto rec = [&](auto&& self, std::size_t x) -> void {
    if (x == n) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t c = 0; c < k; ++c) {
      cur[x] = c;
      self(self, x + 1);
    }
  };
  rec(rec, 0);
  return out;
}

inline std::vector<std::vector<std::uint64_t>> all_region_vectors(std::size_t n, std::size_t k) {
  const std::uint64_t top = (std::uint64_t{1} << k) - 1;
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> cur(n, 1);
  auto rec = [&](auto&& self, std::size_t x) -> void {
    if (x == n) {
      out.push_back(cur);
      return;
    }
    for (std::uint64_t s = 1; s <= top; ++s) {
      cur[x] = s;
      self(self, x + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace gen
