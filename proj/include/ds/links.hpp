#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ds/mass.hpp"

namespace ds {

enum class Method { embedding, consonant, dissonant };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::embedding: return "embedding";
    case Method::consonant: return "consonant";
    case Method::dissonant: return "dissonant";
  }
  return "?";
}

inline Method method_from_string(const std::string& s) {
  if (s == "embedding") return Method::embedding;
  if (s == "consonant") return Method::consonant;
  if (s == "dissonant") return Method::dissonant;
  throw model_error("unknown method '" + s + "'");
}

// Per antecedent value, a mass function over the consequent's frame.
class ConditionalBeliefTable {
 public:
  ConditionalBeliefTable(Variable antecedent, Variable consequent,
                         std::vector<MassFunction> rows)
      : antecedent_(std::move(antecedent)),
        consequent_(std::move(consequent)),
        rows_(std::move(rows)) {
    validate_variable(antecedent_);
    validate_variable(consequent_);
    if (antecedent_.name == consequent_.name)
      throw model_error("antecedent and consequent must be distinct variables");
    if (rows_.size() != antecedent_.values.size())
      throw model_error("table needs exactly one row per antecedent value");
    Frame cons_frame({consequent_});
    for (const auto& row : rows_)
      if (row.frame() != cons_frame)
        throw model_error("row frame must be the consequent's singleton frame");
  }

  const Variable& antecedent() const { return antecedent_; }
  const Variable& consequent() const { return consequent_; }
  const std::vector<MassFunction>& rows() const { return rows_; }
  const MassFunction& row(std::size_t value_index) const { return rows_[value_index]; }

  Frame product_frame() const { return Frame({antecedent_, consequent_}); }
  Frame antecedent_frame() const { return Frame({antecedent_}); }
  Frame consequent_frame() const { return Frame({consequent_}); }

  bool operator==(const ConditionalBeliefTable&) const = default;

 private:
  Variable antecedent_;
  Variable consequent_;
  std::vector<MassFunction> rows_;
};

// A joint mass function over antecedent x consequent built from a table.
struct LinkJoint {
  ConditionalBeliefTable table;
  Method method;
  MassFunction joint;  // over Frame({antecedent, consequent})
};

namespace detail {

// Bits of {a} x S on the product frame [antecedent, consequent].
inline std::uint64_t row_section(const ConditionalBeliefTable& t, std::size_t a,
                                 std::uint64_t consequent_set) {
  std::size_t cons_size = t.consequent().values.size();
  return consequent_set << (a * cons_size);
}

// Bits of (Omega_A \ {a}) x Omega_E.
inline std::uint64_t other_rows_cylinder(const ConditionalBeliefTable& t, std::size_t a) {
  std::size_t cons_size = t.consequent().values.size();
  std::uint64_t all_cons = (1ull << cons_size) - 1;
  std::uint64_t out = 0;
  for (std::size_t b = 0; b < t.antecedent().values.size(); ++b)
    if (b != a) out |= all_cons << (b * cons_size);
  return out;
}

// A consonant row as a nested chain, smallest focal first, with cumulative
// mass levels.
struct NestedChain {
  std::vector<std::uint64_t> focals;
  std::vector<double> cum;

  // Smallest focal whose cumulative mass reaches u.
  std::uint64_t at_level(double u) const {
    for (std::size_t i = 0; i < cum.size(); ++i)
      if (cum[i] >= u) return focals[i];
    return focals.back();
  }
};

inline NestedChain nested_chain(const MassFunction& row) {
  if (!is_consonant(row))
    throw model_error("conditional belief function is not consonant");
  NestedChain chain;
  double total = 0;
  for (const auto& f : row.focals()) {  // canonical order is nested here
    chain.focals.push_back(f.set);
    total += f.mass;
    chain.cum.push_back(total);
  }
  chain.cum.back() = 1.0;
  return chain;
}

}  // namespace detail

// Treats each row as an independent source of evidence: focal S of row a is
// embedded as ({a} x S) union ((Omega_A \ {a}) x Omega_E), and the embedded
// functions are Dempster-combined. No conflict can arise.
inline LinkJoint conditional_embedding(const ConditionalBeliefTable& t) {
  Frame product = t.product_frame();
  MassFunction joint = MassFunction::vacuous(product);
  for (std::size_t a = 0; a < t.rows().size(); ++a) {
    std::uint64_t rest = detail::other_rows_cylinder(t, a);
    std::map<std::uint64_t, double> embedded;
    for (const auto& f : t.row(a).focals())
      embedded[detail::row_section(t, a, f.set) | rest] += f.mass;
    joint = combine(joint, MassFunction::from_masses(product, embedded)).combined;
  }
  return {t, Method::embedding, joint};
}

// Comonotone coupling of rule validity: at validity level u every row
// contributes its smallest focal reaching u. The result is the unique
// consonant joint with vacuous antecedent marginal matching the rows.
inline LinkJoint consonant_extension(const ConditionalBeliefTable& t) {
  std::vector<detail::NestedChain> chains;
  chains.reserve(t.rows().size());
  for (const auto& row : t.rows()) chains.push_back(detail::nested_chain(row));

  std::set<double> breaks{1.0};
  for (const auto& c : chains) breaks.insert(c.cum.begin(), c.cum.end());

  std::map<std::uint64_t, double> acc;
  double lo = 0;
  for (double hi : breaks) {
    if (hi - lo <= kConflictTol) continue;
    double u = (lo + hi) / 2;
    std::uint64_t focal = 0;
    for (std::size_t a = 0; a < chains.size(); ++a)
      focal |= detail::row_section(t, a, chains[a].at_level(u));
    acc[focal] += hi - lo;
    lo = hi;
  }
  return {t, Method::consonant, MassFunction::from_masses(t.product_frame(), acc)};
}

// Countermonotone coupling for a binary antecedent: one row's validity level
// runs against the other's.
inline LinkJoint dissonant_extension(const ConditionalBeliefTable& t) {
  if (t.antecedent().values.size() != 2)
    throw model_error("dissonant extension requires a binary antecedent");
  detail::NestedChain c0 = detail::nested_chain(t.row(0));
  detail::NestedChain c1 = detail::nested_chain(t.row(1));

  std::set<double> breaks{0.0, 1.0};
  breaks.insert(c0.cum.begin(), c0.cum.end());
  for (double c : c1.cum)
    if (1.0 - c >= 0.0 && 1.0 - c <= 1.0) breaks.insert(1.0 - c);

  std::map<std::uint64_t, double> acc;
  double lo = 0;
  for (double hi : breaks) {
    if (hi - lo <= kConflictTol) continue;
    double u = (lo + hi) / 2;
    std::uint64_t focal = detail::row_section(t, 0, c0.at_level(u)) |
                          detail::row_section(t, 1, c1.at_level(1.0 - u));
    acc[focal] += hi - lo;
    lo = hi;
  }
  return {t, Method::dissonant, MassFunction::from_masses(t.product_frame(), acc)};
}

inline LinkJoint build_link(const ConditionalBeliefTable& t, Method method) {
  switch (method) {
    case Method::embedding: return conditional_embedding(t);
    case Method::consonant: return consonant_extension(t);
    case Method::dissonant: return dissonant_extension(t);
  }
  throw model_error("unknown method");
}

}  // namespace ds
