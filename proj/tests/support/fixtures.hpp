#pragma once

// Shared test fixtures: the worked A -> E example and random generators.

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ds/links.hpp"
#include "ds/mass.hpp"

namespace fixtures {

inline ds::Variable var_A() { return {"A", {"1", "0"}}; }
inline ds::Variable var_E() { return {"E", {"1", "0"}}; }

inline ds::Frame frame_A() { return ds::Frame({var_A()}); }
inline ds::Frame frame_E() { return ds::Frame({var_E()}); }
inline ds::Frame frame_AE() { return ds::Frame({var_A(), var_E()}); }

// Configuration bits on frame_AE: 0 = A=1&E=1, 1 = A=1&E=0, 2 = A=0&E=1, 3 = A=0&E=0.
inline ds::ConfigSet ae_set(std::uint64_t bits) { return ds::ConfigSet(frame_AE(), bits); }

inline ds::MassFunction simple_row(double b) {
  ds::Frame fe = frame_E();
  return ds::make_mass(fe, {{ds::ConfigSet::of(fe, {0}), b}});
}

// Rows: given A, .8 on {E}; given not-A, .5 on {E}.
inline ds::ConditionalBeliefTable paper_table() {
  return ds::ConditionalBeliefTable(var_A(), var_E(), {simple_row(0.8), simple_row(0.5)});
}

// Incoming beliefs: .3 on A, .2 on not-A, .5 uncommitted.
inline ds::MassFunction paper_incoming() {
  ds::Frame fa = frame_A();
  return ds::make_mass(fa, {{ds::ConfigSet::of(fa, {0}), 0.3}, {ds::ConfigSet::of(fa, {1}), 0.2}});
}

// Random mass function with at least `min_omega` uncommitted, so chained
// combinations never hit total conflict.
inline ds::MassFunction random_mass(std::mt19937& rng, const ds::Frame& frame,
                                    double min_omega = 0.05) {
  // proper subsets only; uncommitted mass reaches the full set via make_mass,
  // which keeps DSL render/reparse round-trips exact
  std::uniform_int_distribution<int> nfocals(1, 4);
  std::uniform_int_distribution<std::uint64_t> sets(1, (1ull << frame.size()) - 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double omega = min_omega + (1.0 - min_omega) * unit(rng);
  int k = nfocals(rng);
  std::vector<double> weights(k);
  double total = 0;
  for (auto& w : weights) {
    w = unit(rng) + 1e-3;
    total += w;
  }
  std::vector<std::pair<ds::ConfigSet, double>> entries;
  for (int i = 0; i < k; ++i)
    entries.emplace_back(ds::ConfigSet(frame, sets(rng)), weights[i] / total * (1.0 - omega));
  return ds::make_mass(frame, entries);
}

// Random consonant mass function: masses on a nested chain of subsets, the
// remainder uncommitted.
inline ds::MassFunction random_consonant(std::mt19937& rng, const ds::Frame& frame) {
  std::vector<std::size_t> perm(frame.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_int_distribution<std::size_t> len(1, frame.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t k = len(rng);  // chain of k nested proper prefix sets
  std::vector<std::pair<ds::ConfigSet, double>> entries;
  std::uint64_t bits = 0;
  double budget = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    bits |= 1ull << perm[i];
    double mass = unit(rng) * budget * 0.8;
    budget -= mass;
    if (mass > 0) entries.emplace_back(ds::ConfigSet(frame, bits), mass);
  }
  return ds::make_mass(frame, entries);
}

inline ds::Variable random_variable(std::mt19937& rng, const std::string& name,
                                    std::size_t min_arity, std::size_t max_arity) {
  std::uniform_int_distribution<std::size_t> arity(min_arity, max_arity);
  std::size_t n = arity(rng);
  ds::Variable v{name, {}};
  for (std::size_t i = 0; i < n; ++i) v.values.push_back("v" + std::to_string(i));
  return v;
}

}  // namespace fixtures
