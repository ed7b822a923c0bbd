#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ds/links.hpp"
#include "ds/mass.hpp"

namespace ds {

struct LinkPropagation {
  MassFunction joint;     // over antecedent x consequent
  MassFunction marginal;  // collapsed onto the consequent
  double conflict;
};

// Extend the incoming belief onto the product frame, combine with the link
// joint, collapse onto the consequent.
inline LinkPropagation propagate_link(const MassFunction& incoming, const LinkJoint& link) {
  Frame product = link.table.product_frame();
  if (incoming.frame() != link.table.antecedent_frame())
    throw model_error("incoming belief must live on the antecedent's frame");
  CombinationResult r = combine(vacuous_extend(incoming, product), link.joint);
  MassFunction marginal = marginalize(r.combined, link.table.consequent_frame());
  return {std::move(r.combined), std::move(marginal), r.conflict};
}

// A chain of directed links with an incoming belief on the root variable.
struct ChainModel {
  std::vector<Variable> variables;
  std::vector<LinkJoint> links;  // links[i] connects variables[i] -> variables[i+1]
  MassFunction root_belief;

  void validate() const {
    if (variables.empty()) throw model_error("chain needs at least one variable");
    if (links.size() + 1 != variables.size())
      throw model_error("chain needs exactly one link per consecutive variable pair");
    for (std::size_t i = 0; i < links.size(); ++i) {
      if (links[i].table.antecedent() != variables[i] ||
          links[i].table.consequent() != variables[i + 1])
        throw model_error("link " + std::to_string(i) + " does not connect " +
                          variables[i].name + " -> " + variables[i + 1].name);
    }
    if (root_belief.frame() != Frame({variables[0]}))
      throw model_error("root belief must live on the first variable's frame");
  }
};

struct ChainResult {
  std::vector<MassFunction> marginals;  // one per variable, chain order
  std::vector<double> conflicts;        // one per link
};

inline ChainResult propagate_chain(const ChainModel& model) {
  model.validate();
  ChainResult out;
  out.marginals.push_back(model.root_belief);
  for (std::size_t i = 0; i < model.links.size(); ++i) {
    LinkPropagation step;
    try {
      step = propagate_link(out.marginals.back(), model.links[i]);
    } catch (const conflict_error&) {
      throw conflict_error("total conflict at link " + model.variables[i].name + " -> " +
                           model.variables[i + 1].name);
    }
    out.marginals.push_back(std::move(step.marginal));
    out.conflicts.push_back(step.conflict);
  }
  return out;
}

struct ReportRow {
  ConfigSet subset;
  double m;
  double bel;
  double pl;
};

// m/Bel/Pl for every nonempty subset of the frame, in canonical order.
struct BeliefReport {
  Frame frame;
  std::vector<ReportRow> rows;
  double conflict = 0.0;
};

inline BeliefReport report(const MassFunction& m, double conflict = 0.0,
                           std::size_t max_enum = 12) {
  const Frame& frame = m.frame();
  if (frame.size() > max_enum)
    throw enumeration_error("frame has " + std::to_string(frame.size()) +
                            " configurations, above the enumeration guard of " +
                            std::to_string(max_enum));
  std::vector<std::uint64_t> subsets;
  subsets.reserve((1ull << frame.size()) - 1);
  for (std::uint64_t s = 1; s < (1ull << frame.size()); ++s) subsets.push_back(s);
  std::sort(subsets.begin(), subsets.end(), canonical_subset_less);

  BeliefReport out{frame, {}, conflict};
  out.rows.reserve(subsets.size());
  for (std::uint64_t s : subsets) {
    ConfigSet set(frame, s);
    out.rows.push_back({set, m.mass_of(s), bel(m, set), pl(m, set)});
  }
  return out;
}

}  // namespace ds
