#pragma once

#include <cstddef>
#include <cstdint>

namespace softcmp {

// Numeric comparison tolerance used for grouping distance values and for
// "equals zero / equals one" checks throughout the library.
inline constexpr double kEqTol = 1e-9;

// Inputs whose per-object masses deviate from 1 by at most this much are
// renormalized on load; larger deviations are rejected.
inline constexpr double kInputTol = 1e-6;

// Default cap on enumerated (clustering, clustering) pairs for exact paths.
inline constexpr double kDefaultBudget = 1e6;

// Cluster sets are stored as 64-bit masks.
inline constexpr std::size_t kMaxClusters = 64;

inline constexpr std::uint64_t full_mask(std::size_t k) {
  return k >= 64 ? ~0ull : ((1ull << k) - 1ull);
}

}  // namespace softcmp
