#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "ds/frames.hpp"

namespace ds {

inline constexpr double kMassSumTol = 1e-9;
inline constexpr double kConflictTol = 1e-12;

// Canonical focal order: ascending cardinality, then lexicographic over the
// ascending member-index lists.
inline bool canonical_subset_less(std::uint64_t a, std::uint64_t b) {
  int ca = std::popcount(a), cb = std::popcount(b);
  if (ca != cb) return ca < cb;
  while (a && b) {
    int ia = std::countr_zero(a), ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

struct Focal {
  std::uint64_t set;  // configuration bit mask, never 0
  double mass;        // in (0, 1]

  bool operator==(const Focal&) const = default;
};

// A basic probability assignment: masses on focal subsets summing to 1.
// Immutable after construction; focals kept in canonical order.
class MassFunction {
 public:
  MassFunction() = default;

  static MassFunction vacuous(Frame frame) {
    std::uint64_t full = ConfigSet::full(frame).bits();
    return MassFunction(std::move(frame), {{full, 1.0}});
  }

  // Masses must already sum to 1 within tolerance; zero entries are dropped.
  static MassFunction from_masses(Frame frame, const std::map<std::uint64_t, double>& entries) {
    std::vector<Focal> focals;
    double sum = 0;
    for (const auto& [set, mass] : entries) {
      if (mass < 0) throw model_error("negative mass");
      if (mass == 0) continue;
      if (set == 0) throw model_error("the empty set cannot be a focal element");
      focals.push_back({set, mass});
      sum += mass;
    }
    if (std::abs(sum - 1.0) > kMassSumTol)
      throw model_error("masses must sum to 1");
    return MassFunction(std::move(frame), std::move(focals));
  }

  const Frame& frame() const { return frame_; }
  const std::vector<Focal>& focals() const { return focals_; }

  double mass_of(std::uint64_t set) const {
    for (const auto& f : focals_)
      if (f.set == set) return f.mass;
    return 0.0;
  }
  double mass_of(const ConfigSet& s) const {
    require_frame(s);
    return mass_of(s.bits());
  }

  ConfigSet focal_set(std::size_t i) const { return ConfigSet(frame_, focals_[i].set); }

  bool operator==(const MassFunction&) const = default;

  void require_frame(const ConfigSet& s) const {
    if (s.frame() != frame_) throw model_error("frame mismatch");
  }

 private:
  MassFunction(Frame frame, std::vector<Focal> focals)
      : frame_(std::move(frame)), focals_(std::move(focals)) {
    std::sort(focals_.begin(), focals_.end(),
              [](const Focal& a, const Focal& b) { return canonical_subset_less(a.set, b.set); });
  }

  Frame frame_;
  std::vector<Focal> focals_;
};

// Builds a mass function from committed entries; the remainder of the unit
// mass is left uncommitted on the full set.
inline MassFunction make_mass(const Frame& frame,
                              const std::vector<std::pair<ConfigSet, double>>& entries) {
  std::map<std::uint64_t, double> acc;
  for (const auto& [set, mass] : entries) {
    if (set.frame() != frame) throw model_error("frame mismatch in mass entries");
    if (set.is_empty()) throw model_error("the empty set cannot be a focal element");
    if (mass < 0) throw model_error("negative mass");
    acc[set.bits()] += mass;
  }
  double sum = 0;  // summed in key order so the remainder is entry-order independent
  for (const auto& [set, mass] : acc) sum += mass;
  if (sum > 1.0 + kMassSumTol) throw model_error("masses sum to more than 1");
  double remainder = 1.0 - sum;
  if (remainder > 0) acc[ConfigSet::full(frame).bits()] += remainder;
  return MassFunction::from_masses(frame, acc);
}

// Total mass of focals contained in x.
inline double bel(const MassFunction& m, const ConfigSet& x) {
  m.require_frame(x);
  double total = 0;
  for (const auto& f : m.focals())
    if ((f.set & ~x.bits()) == 0) total += f.mass;
  return total;
}

// 1 minus the belief of the complement.
inline double pl(const MassFunction& m, const ConfigSet& x) {
  return 1.0 - bel(m, ~x);
}

struct CombinationResult {
  MassFunction combined;
  double conflict;  // mass annihilated and renormalized away, in [0, 1)
};

// Dempster's rule: intersect focal pairs, renormalize away conflict.
inline CombinationResult combine(const MassFunction& m1, const MassFunction& m2) {
  if (m1.frame() != m2.frame()) throw model_error("frame mismatch in combination");
  std::map<std::uint64_t, double> acc;
  double conflict = 0;
  for (const auto& f1 : m1.focals()) {
    for (const auto& f2 : m2.focals()) {
      std::uint64_t c = f1.set & f2.set;
      double w = f1.mass * f2.mass;
      if (c == 0)
        conflict += w;
      else
        acc[c] += w;
    }
  }
  if (conflict >= 1.0 - kConflictTol)
    throw conflict_error("total conflict: the evidence is contradictory");
  double norm = 1.0 / (1.0 - conflict);
  for (auto& [set, mass] : acc) mass *= norm;
  return {MassFunction::from_masses(m1.frame(), acc), conflict};
}

// Each focal contributes its mass to its projection onto the target frame.
inline MassFunction marginalize(const MassFunction& m, const Frame& target) {
  auto map = restriction_map(m.frame(), target);
  std::map<std::uint64_t, double> acc;
  for (const auto& f : m.focals()) {
    std::uint64_t proj = 0;
    for (std::uint64_t b = f.set; b; b &= b - 1)
      proj |= 1ull << map[static_cast<std::size_t>(std::countr_zero(b))];
    acc[proj] += f.mass;
  }
  return MassFunction::from_masses(target, acc);
}

// Each focal becomes its cylinder on the larger frame, mass unchanged.
inline MassFunction vacuous_extend(const MassFunction& m, const Frame& target) {
  auto map = restriction_map(target, m.frame());
  std::map<std::uint64_t, double> acc;
  for (const auto& f : m.focals()) {
    std::uint64_t ext = 0;
    for (std::size_t c = 0; c < target.size(); ++c)
      if ((f.set >> map[c]) & 1) ext |= 1ull << c;
    acc[ext] += f.mass;
  }
  return MassFunction::from_masses(target, acc);
}

// Dempster conditioning: combination with a mass function certain of `given`.
inline MassFunction condition(const MassFunction& m, const ConfigSet& given) {
  m.require_frame(given);
  if (given.is_empty()) throw model_error("cannot condition on the empty set");
  MassFunction certain = MassFunction::from_masses(m.frame(), {{given.bits(), 1.0}});
  return combine(m, certain).combined;
}

// True iff the focals form a nested chain under inclusion.
inline bool is_consonant(const MassFunction& m) {
  std::vector<std::uint64_t> sets;
  sets.reserve(m.focals().size());
  for (const auto& f : m.focals()) sets.push_back(f.set);
  std::sort(sets.begin(), sets.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  for (std::size_t i = 1; i < sets.size(); ++i)
    if (sets[i - 1] & ~sets[i]) return false;
  return true;
}

}  // namespace ds
