#include "doctest.h"

#include <random>

#include "ds/links.hpp"
#include "support/fixtures.hpp"

using namespace ds;
using namespace fixtures;

namespace {

ConditionalBeliefTable table_with_rows(MassFunction row_a, MassFunction row_nota) {
  return ConditionalBeliefTable(var_A(), var_E(), {std::move(row_a), std::move(row_nota)});
}

ConditionalBeliefTable vacuous_table() {
  Frame fe = frame_E();
  return table_with_rows(MassFunction::vacuous(fe), MassFunction::vacuous(fe));
}

// Conditioning round-trip oracle: conditioning the joint on each antecedent
// value and collapsing onto the consequent must reproduce the table row.
void check_round_trip(const LinkJoint& link) {
  const ConditionalBeliefTable& t = link.table;
  Frame product = t.product_frame();
  Frame cons = t.consequent_frame();
  Frame ant = t.antecedent_frame();
  for (std::size_t a = 0; a < t.rows().size(); ++a) {
    ConfigSet cyl = cyl_extend_set(ConfigSet::of(ant, {a}), product);
    MassFunction back = marginalize(condition(link.joint, cyl), cons);
    const MassFunction& row = t.row(a);
    REQUIRE(back.focals().size() == row.focals().size());
    for (std::size_t k = 0; k < row.focals().size(); ++k) {
      CHECK(back.focals()[k].set == row.focals()[k].set);
      CHECK(back.focals()[k].mass == doctest::Approx(row.focals()[k].mass).epsilon(1e-12));
    }
  }
}

void check_vacuous_marginal(const LinkJoint& link) {
  MassFunction marginal = marginalize(link.joint, link.table.antecedent_frame());
  REQUIRE(marginal.focals().size() == 1);
  CHECK(marginal.focals()[0].set == ConfigSet::full(link.table.antecedent_frame()).bits());
  CHECK(marginal.focals()[0].mass == doctest::Approx(1.0).epsilon(1e-12));
}

}  // namespace

// Product-frame bits: 0 = A=1&E=1, 1 = A=1&E=0, 2 = A=0&E=1, 3 = A=0&E=0.

TEST_CASE("conditional embedding of the worked example") {
  LinkJoint link = conditional_embedding(paper_table());
  CHECK(link.joint.mass_of(ae_set(0b0101)) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(link.joint.mass_of(ae_set(0b1101)) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(link.joint.mass_of(ae_set(0b0111)) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(link.joint.mass_of(ConfigSet::full(frame_AE())) == doctest::Approx(0.1).epsilon(1e-12));
  check_vacuous_marginal(link);
  check_round_trip(link);
}

TEST_CASE("embedding vacuous rows yields a vacuous joint") {
  LinkJoint link = conditional_embedding(vacuous_table());
  CHECK(link.joint == MassFunction::vacuous(frame_AE()));
}

TEST_CASE("embedding two certain implications yields the biconditional") {
  Frame fe = frame_E();
  ConditionalBeliefTable t = table_with_rows(
      make_mass(fe, {{ConfigSet::of(fe, {0}), 1.0}}),
      make_mass(fe, {{ConfigSet::of(fe, {1}), 1.0}}));
  LinkJoint link = conditional_embedding(t);
  // brute-force oracle: ({A} x {E} | rest) = {0,2,3}, ({notA} x {notE} | rest) = {3,0,1},
  // single pair, intersection {0,3}
  CHECK((0b1101ull & 0b1011ull) == 0b1001ull);
  REQUIRE(link.joint.focals().size() == 1);
  CHECK(link.joint.mass_of(ae_set(0b1001)) == doctest::Approx(1.0));
}

TEST_CASE("embedding accepts non-consonant rows") {
  Frame fe = frame_E();
  MassFunction dissenting = make_mass(fe, {{ConfigSet::of(fe, {0}), 0.4},
                                           {ConfigSet::of(fe, {1}), 0.3}});
  CHECK_FALSE(is_consonant(dissenting));
  LinkJoint link = conditional_embedding(table_with_rows(dissenting, simple_row(0.5)));
  check_vacuous_marginal(link);
  check_round_trip(link);
}

TEST_CASE("consonant extension of the worked example") {
  LinkJoint link = consonant_extension(paper_table());
  REQUIRE(link.joint.focals().size() == 3);
  CHECK(link.joint.mass_of(ae_set(0b0101)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(link.joint.mass_of(ae_set(0b1101)) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(link.joint.mass_of(ConfigSet::full(frame_AE())) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(is_consonant(link.joint));
  check_vacuous_marginal(link);
  check_round_trip(link);
}

TEST_CASE("consonant extension of vacuous rows") {
  LinkJoint link = consonant_extension(vacuous_table());
  CHECK(link.joint == MassFunction::vacuous(frame_AE()));
}

TEST_CASE("consonant extension with equal levels collapses to two intervals") {
  LinkJoint link = consonant_extension(table_with_rows(simple_row(0.8), simple_row(0.8)));
  REQUIRE(link.joint.focals().size() == 2);
  CHECK(link.joint.mass_of(ae_set(0b0101)) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(link.joint.mass_of(ConfigSet::full(frame_AE())) == doctest::Approx(0.2).epsilon(1e-12));
  check_round_trip(link);
}

TEST_CASE("consonant extension rejects non-consonant rows") {
  Frame fe = frame_E();
  MassFunction bad = make_mass(fe, {{ConfigSet::of(fe, {0}), 0.4},
                                    {ConfigSet::of(fe, {1}), 0.3}});
  CHECK_THROWS_AS(consonant_extension(table_with_rows(bad, simple_row(0.5))), model_error);
}

TEST_CASE("consonant extension handles a ternary antecedent") {
  Variable ant{"X", {"a", "b", "c"}};
  Frame fe = frame_E();
  ConditionalBeliefTable t(ant, var_E(),
                           {simple_row(0.8), simple_row(0.5), simple_row(0.3)});
  LinkJoint link = consonant_extension(t);
  CHECK(is_consonant(link.joint));
  check_vacuous_marginal(link);
  check_round_trip(link);
}

TEST_CASE("dissonant extension of the worked example") {
  LinkJoint link = dissonant_extension(paper_table());
  REQUIRE(link.joint.focals().size() == 3);
  CHECK(link.joint.mass_of(ae_set(0b0101)) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(link.joint.mass_of(ae_set(0b1101)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(link.joint.mass_of(ae_set(0b0111)) == doctest::Approx(0.2).epsilon(1e-12));
  // no belief on the entire cross-product space
  CHECK(link.joint.mass_of(ConfigSet::full(frame_AE())) == 0.0);
  check_vacuous_marginal(link);
  check_round_trip(link);
}

TEST_CASE("dissonant extension at the Frechet lower bound") {
  LinkJoint link = dissonant_extension(table_with_rows(simple_row(0.5), simple_row(0.5)));
  CHECK(link.joint.mass_of(ae_set(0b1101)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(link.joint.mass_of(ae_set(0b0111)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(link.joint.mass_of(ae_set(0b0101)) == 0.0);
  CHECK(link.joint.mass_of(ConfigSet::full(frame_AE())) == 0.0);
  check_round_trip(link);
}

TEST_CASE("dissonant extension with slack keeps mass uncommitted") {
  LinkJoint link = dissonant_extension(table_with_rows(simple_row(0.2), simple_row(0.3)));
  CHECK(link.joint.mass_of(ae_set(0b1101)) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(link.joint.mass_of(ae_set(0b0111)) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(link.joint.mass_of(ConfigSet::full(frame_AE())) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(link.joint.mass_of(ae_set(0b0101)) == 0.0);
  check_vacuous_marginal(link);
  check_round_trip(link);
}

TEST_CASE("dissonant extension requires a binary antecedent") {
  Variable ant{"X", {"a", "b", "c"}};
  ConditionalBeliefTable t(ant, var_E(),
                           {simple_row(0.8), simple_row(0.5), simple_row(0.3)});
  CHECK_THROWS_AS(dissonant_extension(t), model_error);
}

TEST_CASE("simple-support closed forms for the three couplings") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Frame ae = frame_AE();
  ConfigSet both_valid = ae_set(0b0101);
  ConfigSet omega = ConfigSet::full(ae);
  for (int i = 0; i < 200; ++i) {
    double b1 = unit(rng), b2 = unit(rng);
    ConditionalBeliefTable t = table_with_rows(simple_row(b1), simple_row(b2));
    LinkJoint emb = conditional_embedding(t);
    CHECK(emb.joint.mass_of(both_valid) == doctest::Approx(b1 * b2).epsilon(1e-12));
    CHECK(emb.joint.mass_of(omega) ==
          doctest::Approx((1 - b1) * (1 - b2)).epsilon(1e-12));
    LinkJoint con = consonant_extension(t);
    CHECK(con.joint.mass_of(both_valid) == doctest::Approx(std::min(b1, b2)).epsilon(1e-12));
    CHECK(con.joint.mass_of(omega) ==
          doctest::Approx(1 - std::max(b1, b2)).epsilon(1e-12));
    LinkJoint dis = dissonant_extension(t);
    CHECK(dis.joint.mass_of(both_valid) ==
          doctest::Approx(std::max(0.0, b1 + b2 - 1)).epsilon(1e-12));
    CHECK(dis.joint.mass_of(omega) ==
          doctest::Approx(std::max(0.0, 1 - b1 - b2)).epsilon(1e-12));
  }
}

TEST_CASE("belief intervals on E nest across methods for the fixture") {
  Frame fe = frame_E();
  ConfigSet e1 = ConfigSet::of(fe, {0});
  MassFunction incoming_ext = vacuous_extend(paper_incoming(), frame_AE());
  auto interval = [&](Method m) {
    MassFunction joint = combine(incoming_ext, build_link(paper_table(), m).joint).combined;
    MassFunction marg = marginalize(joint, fe);
    return std::pair{bel(marg, e1), pl(marg, e1)};
  };
  auto [bel_con, pl_con] = interval(Method::consonant);
  auto [bel_emb, pl_emb] = interval(Method::embedding);
  auto [bel_dis, pl_dis] = interval(Method::dissonant);
  CHECK(bel_con == doctest::Approx(0.59).epsilon(1e-9));
  CHECK(bel_emb == doctest::Approx(0.54).epsilon(1e-9));
  CHECK(bel_dis == doctest::Approx(0.49).epsilon(1e-9));
  // [.59,1] inside [.54,1] inside [.49,1]
  CHECK(bel_dis < bel_emb);
  CHECK(bel_emb < bel_con);
  CHECK(pl_con == doctest::Approx(1.0));
  CHECK(pl_emb == doctest::Approx(1.0));
  CHECK(pl_dis == doctest::Approx(1.0));
}
