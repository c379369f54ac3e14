#pragma once

// Core model: frames of clusters, per-object mass functions, soft clusterings
// and the hard special case. Objects are dense indices 0..n-1; cluster sets
// are 64-bit masks over the frame, so k is capped at 64.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "softcmp/common.hpp"
#include "softcmp/errors.hpp"

namespace softcmp {

struct Frame {
  std::vector<std::string> labels;

  Frame() = default;
  explicit Frame(std::size_t k) {
    if (k == 0 || k > kMaxClusters)
      throw Error(Errc::OutOfRange, "frame size must be in 1..64, got " + std::to_string(k));
    labels.reserve(k);
    for (std::size_t i = 0; i < k; ++i) labels.push_back("c" + std::to_string(i));
  }
  explicit Frame(std::vector<std::string> names) : labels(std::move(names)) {
    if (labels.empty() || labels.size() > kMaxClusters)
      throw Error(Errc::OutOfRange, "frame size must be in 1..64, got " + std::to_string(labels.size()));
  }

  std::size_t size() const { return labels.size(); }
  std::uint64_t mask() const { return full_mask(labels.size()); }
};

enum class SCKind { Hard, Rough, Fuzzy, Possibilistic, GeneralEvidential };

inline const char* kind_name(SCKind k) {
  switch (k) {
    case SCKind::Hard: return "hard";
    case SCKind::Rough: return "rough";
    case SCKind::Fuzzy: return "fuzzy";
    case SCKind::Possibilistic: return "possibilistic";
    case SCKind::GeneralEvidential: return "evidential";
  }
  return "?";
}

enum class EmptySetPolicy { Reject, RedistributeOmega, Renormalize };

struct ValidateOptions {
  EmptySetPolicy emptySet = EmptySetPolicy::RedistributeOmega;
  double acceptTol = kInputTol;  // max |sum - 1| that is repaired by renormalizing
};

// Mass function over cluster sets of one object. Focal entries are kept
// sorted by mask, strictly positive, and summing to 1 within kEqTol.
class MassFunction {
 public:
  using Entry = std::pair<std::uint64_t, double>;

  MassFunction() = default;

  static MassFunction categorical(std::uint64_t set) {
    MassFunction m;
    if (set == 0) throw Error(Errc::EmptyFocalSet, "categorical mass on the empty set");
    m.focal_.emplace_back(set, 1.0);
    return m;
  }

  // Validates raw (set, mass) entries for a frame of k clusters: merges
  // duplicates, applies the empty-set policy, renormalizes small deviations.
  static MassFunction validated(std::vector<Entry> raw, std::size_t k,
                                const ValidateOptions& opt = {}) {
    const std::uint64_t frameMask = full_mask(k);
    double emptyMass = 0.0;
    std::vector<Entry> entries;
    entries.reserve(raw.size());
    for (const auto& [set, mass] : raw) {
      if (mass < 0.0)
        throw Error(Errc::MassSumViolation, "negative focal mass " + std::to_string(mass));
      if (mass == 0.0) continue;
      if ((set & ~frameMask) != 0)
        throw Error(Errc::UnknownLabel, "focal set references a cluster outside the frame");
      if (set == 0) {
        emptyMass += mass;
        continue;
      }
      entries.emplace_back(set, mass);
    }
    if (emptyMass > 0.0) {
      switch (opt.emptySet) {
        case EmptySetPolicy::Reject:
          throw Error(Errc::EmptyFocalSet, "mass " + std::to_string(emptyMass) + " on the empty set");
        case EmptySetPolicy::RedistributeOmega:
          entries.emplace_back(frameMask, emptyMass);
          break;
        case EmptySetPolicy::Renormalize:
          break;  // dropped; the sum check below rescales the rest
      }
    }
    if (entries.empty())
      throw Error(Errc::EmptyFocalSet, "no focal set with positive mass");

    std::sort(entries.begin(), entries.end());
    std::vector<Entry> merged;
    for (const auto& e : entries) {
      if (!merged.empty() && merged.back().first == e.first)
        merged.back().second += e.second;
      else
        merged.push_back(e);
    }
    double sum = 0.0;
    for (const auto& e : merged) sum += e.second;
    const bool renormalizingEmpty = emptyMass > 0.0 && opt.emptySet == EmptySetPolicy::Renormalize;
    if (std::abs(sum - 1.0) > opt.acceptTol && !renormalizingEmpty)
      throw Error(Errc::MassSumViolation, "focal masses sum to " + std::to_string(sum));
    if (renormalizingEmpty && std::abs(sum + emptyMass - 1.0) > opt.acceptTol)
      throw Error(Errc::MassSumViolation,
                  "focal masses sum to " + std::to_string(sum + emptyMass));
    MassFunction m;
    m.focal_.reserve(merged.size());
    for (auto& e : merged) m.focal_.emplace_back(e.first, e.second / sum);
    return m;
  }

  const std::vector<Entry>& focal() const { return focal_; }
  std::size_t focal_count() const { return focal_.size(); }

  double mass(std::uint64_t set) const {
    auto it = std::lower_bound(focal_.begin(), focal_.end(), set,
                               [](const Entry& e, std::uint64_t s) { return e.first < s; });
    return (it != focal_.end() && it->first == set) ? it->second : 0.0;
  }

  double mass_sum() const {
    double s = 0.0;
    for (const auto& e : focal_) s += e.second;
    return s;
  }

  // plausibility of a single cluster
  double contour(std::size_t cluster) const {
    const std::uint64_t bit = 1ull << cluster;
    double s = 0.0;
    for (const auto& e : focal_)
      if (e.first & bit) s += e.second;
    return s;
  }

  std::uint64_t support() const {
    std::uint64_t u = 0;
    for (const auto& e : focal_) u |= e.first;
    return u;
  }

  bool is_logical() const { return focal_.size() == 1; }

  bool is_bayesian() const {
    for (const auto& e : focal_)
      if (std::popcount(e.first) != 1) return false;
    return true;
  }

  bool is_consonant() const {
    // focal_ is sorted by mask; nested sets have strictly increasing size,
    // so verify a chain after ordering by popcount
    std::vector<std::uint64_t> sets;
    sets.reserve(focal_.size());
    for (const auto& e : focal_) sets.push_back(e.first);
    std::sort(sets.begin(), sets.end(), [](std::uint64_t a, std::uint64_t b) {
      return std::popcount(a) < std::popcount(b);
    });
    for (std::size_t i = 0; i + 1 < sets.size(); ++i)
      if ((sets[i] & sets[i + 1]) != sets[i]) return false;
    return true;
  }

  bool is_hard() const { return is_logical() && std::popcount(focal_.front().first) == 1; }

  friend bool operator==(const MassFunction&, const MassFunction&) = default;

 private:
  std::vector<Entry> focal_;
};

class SoftClustering {
 public:
  SoftClustering() = default;
  SoftClustering(Frame frame, std::vector<MassFunction> masses)
      : frame_(std::move(frame)), masses_(std::move(masses)) {}

  std::size_t n() const { return masses_.size(); }
  std::size_t k() const { return frame_.size(); }
  const Frame& frame() const { return frame_; }
  const MassFunction& mass_of(std::size_t x) const { return masses_[x]; }
  const std::vector<MassFunction>& masses() const { return masses_; }

  friend bool operator==(const SoftClustering&, const SoftClustering&) = default;

 private:
  Frame frame_;
  std::vector<MassFunction> masses_;
};

// Builds a soft clustering from raw per-object entries, validating each
// object's mass function against the frame.
inline SoftClustering validate_soft_clustering(Frame frame,
                                               std::vector<std::vector<MassFunction::Entry>> raw,
                                               const ValidateOptions& opt = {}) {
  std::vector<MassFunction> masses;
  masses.reserve(raw.size());
  for (std::size_t x = 0; x < raw.size(); ++x) {
    try {
      masses.push_back(MassFunction::validated(std::move(raw[x]), frame.size(), opt));
    } catch (const Error& e) {
      throw Error(e.code(), "object " + std::to_string(x) + ": " + e.what());
    }
  }
  return SoftClustering(std::move(frame), std::move(masses));
}

// Most specific kind first: hard implies rough and fuzzy (and consonant).
inline SCKind classify(const SoftClustering& m) {
  bool logical = true, bayesian = true, consonant = true, hard = true;
  for (const auto& mf : m.masses()) {
    logical = logical && mf.is_logical();
    bayesian = bayesian && mf.is_bayesian();
    hard = hard && mf.is_hard();
    consonant = consonant && mf.is_consonant();
  }
  if (m.n() > 0) {
    if (hard) return SCKind::Hard;
    if (logical) return SCKind::Rough;
    if (bayesian) return SCKind::Fuzzy;
    if (consonant) return SCKind::Possibilistic;
  }
  return SCKind::GeneralEvidential;
}

struct HardClustering {
  Frame frame;
  std::vector<std::uint32_t> labels;

  HardClustering() = default;
  HardClustering(Frame f, std::vector<std::uint32_t> l) : frame(std::move(f)), labels(std::move(l)) {
    for (auto lab : labels)
      if (lab >= frame.size())
        throw Error(Errc::UnknownLabel, "label index " + std::to_string(lab) + " outside frame");
  }

  std::size_t n() const { return labels.size(); }
  std::size_t k() const { return frame.size(); }

  SoftClustering to_soft() const {
    std::vector<MassFunction> masses;
    masses.reserve(labels.size());
    for (auto lab : labels) masses.push_back(MassFunction::categorical(1ull << lab));
    return SoftClustering(frame, std::move(masses));
  }

  friend bool operator==(const HardClustering&, const HardClustering&) = default;
};

// Relabels clusters in order of first appearance, so two hard clusterings
// induce the same partition exactly when their canonical labels are equal.
inline std::vector<std::uint32_t> canonical_labels(std::span<const std::uint32_t> labels) {
  std::vector<std::uint32_t> map(kMaxClusters, UINT32_MAX);
  std::vector<std::uint32_t> out;
  out.reserve(labels.size());
  std::uint32_t next = 0;
  for (auto lab : labels) {
    if (map[lab] == UINT32_MAX) map[lab] = next++;
    out.push_back(map[lab]);
  }
  return out;
}

inline bool equivalent(const HardClustering& a, const HardClustering& b) {
  if (a.n() != b.n())
    throw Error(Errc::MismatchedObjectCount,
                std::to_string(a.n()) + " vs " + std::to_string(b.n()) + " objects");
  return canonical_labels(a.labels) == canonical_labels(b.labels);
}

// Pairwise same-cluster relation of a hard clustering.
class RelationalRepr {
 public:
  explicit RelationalRepr(const HardClustering& c) : n_(c.n()), labels_(canonical_labels(c.labels)) {}

  std::size_t n() const { return n_; }
  bool same_cluster(std::size_t x, std::size_t y) const { return labels_[x] == labels_[y]; }

  friend bool operator==(const RelationalRepr&, const RelationalRepr&) = default;

 private:
  std::size_t n_;
  std::vector<std::uint32_t> labels_;
};

inline RelationalRepr relational_of_hard(const HardClustering& c) { return RelationalRepr(c); }

// Mass over {same, different, unknown} for one object pair: the pair sits in
// the same cluster only if both masses commit to one identical singleton, in
// different clusters if the focal sets cannot intersect, else undecided.
struct PairRelationMass {
  double same = 0.0;
  double different = 0.0;
  double unknown = 0.0;
};

inline PairRelationMass pair_relation_mass(const SoftClustering& m, std::size_t x, std::size_t y) {
  if (x >= m.n() || y >= m.n()) throw Error(Errc::OutOfRange, "object index outside clustering");
  PairRelationMass out;
  for (const auto& [a, ma] : m.mass_of(x).focal()) {
    for (const auto& [b, mb] : m.mass_of(y).focal()) {
      const double w = ma * mb;
      if (a == b && std::popcount(a) == 1)
        out.same += w;
      else if ((a & b) == 0)
        out.different += w;
      else
        out.unknown += w;
    }
  }
  return out;
}

// Converts a possibility vector over clusters (max must be 1, or pass
// renormalize) into the consonant mass function with that contour.
inline MassFunction possibility_to_consonant(std::span<const double> mu, bool renormalize = false) {
  if (mu.empty() || mu.size() > kMaxClusters)
    throw Error(Errc::OutOfRange, "possibility vector size must be in 1..64");
  double top = 0.0;
  for (double v : mu) {
    if (v < -kEqTol || v > 1.0 + kEqTol)
      throw Error(Errc::OutOfRange, "possibility degree outside [0,1]: " + std::to_string(v));
    top = std::max(top, v);
  }
  if (std::abs(top - 1.0) > kEqTol) {
    if (!renormalize || top <= kEqTol)
      throw Error(Errc::SubnormalPossibility, "max possibility is " + std::to_string(top));
  }
  std::vector<std::pair<double, std::size_t>> byLevel;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double v = mu[i] / (std::abs(top - 1.0) > kEqTol ? top : 1.0);
    if (v > kEqTol) byLevel.emplace_back(v, i);
  }
  std::sort(byLevel.begin(), byLevel.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<MassFunction::Entry> entries;
  std::uint64_t set = 0;
  std::size_t i = 0;
  while (i < byLevel.size()) {
    const double level = byLevel[i].first;
    while (i < byLevel.size() && byLevel[i].first > level - kEqTol) set |= 1ull << byLevel[i++].second;
    const double next = i < byLevel.size() ? byLevel[i].first : 0.0;
    if (level - next > kEqTol) entries.emplace_back(set, level - next);
  }
  return MassFunction::validated(std::move(entries), mu.size());
}

// Per-object contour of a consonant mass function; inverse of the above.
inline std::vector<double> consonant_contour(const MassFunction& m, std::size_t k) {
  std::vector<double> mu(k, 0.0);
  for (std::size_t w = 0; w < k; ++w) mu[w] = m.contour(w);
  return mu;
}

// Drops focal sets with mass below minMass (always keeping the heaviest one)
// and renormalizes. Used to trim negligible focal structure before an exact
// enumeration; minMass = 0 is the identity.
inline SoftClustering prune_focal(const SoftClustering& m, double minMass) {
  if (minMass <= 0.0) return m;
  std::vector<MassFunction> masses;
  masses.reserve(m.n());
  for (const auto& mf : m.masses()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < mf.focal().size(); ++i)
      if (mf.focal()[i].second > mf.focal()[best].second) best = i;
    std::vector<MassFunction::Entry> kept;
    for (std::size_t i = 0; i < mf.focal().size(); ++i)
      if (i == best || mf.focal()[i].second >= minMass) kept.push_back(mf.focal()[i]);
    double sum = 0.0;
    for (auto& e : kept) sum += e.second;
    for (auto& e : kept) e.second /= sum;
    masses.push_back(MassFunction::validated(std::move(kept), m.k()));
  }
  return SoftClustering(m.frame(), std::move(masses));
}

}  // namespace softcmp
