#include <doctest.h>

#include "edlogic/decision.hpp"
#include "edlogic/evidence.hpp"
#include "helpers.hpp"

using namespace edlogic;
using edtest::Rng;

namespace {

// The worked two-point space with one proposition true exactly at A.
Model example_model() {
  Model m{edtest::example_two_point_space(), {}};
  m.valuation.props = {"AtA"};
  m.valuation.truth = {1u, 0u};
  return m;
}

Formula basic(std::vector<std::pair<Rat, Prop>> summands, Rel rel, Rat bound) {
  BasicEDFormula b;
  b.term.summands = std::move(summands);
  b.rel = rel;
  b.bound = std::move(bound);
  return f_basic(std::move(b));
}

}  // namespace

TEST_CASE("extension") {
  Model m = example_model();
  CHECK(extension(m, prop_true()) == PointSet::full(2));
  PointSet at_a = extension(m, prop_atom("AtA"));
  CHECK(at_a.count() == 1);
  CHECK(at_a.contains(0));
  CHECK(extension(m, prop_not(prop_atom("AtA"))) == at_a.complement());
  CHECK_THROWS_AS(extension(m, prop_atom("Elsewhere")), UnknownProposition);
}

TEST_CASE("satisfies on the worked example") {
  Model m = example_model();
  CHECK(satisfies(m, parse_formula("ED(true) = 0")));
  CHECK(satisfies(m, parse_formula("ED(AtA) = 0.18")));
  CHECK(satisfies(m, parse_formula("ED(AtA) = 9/50")));
  CHECK(!satisfies(m, parse_formula("ED(AtA) > 0.18")));
  Formula f = parse_formula("ED(AtA) >= 0.5");
  CHECK(satisfies(m, f_not(f)) == !satisfies(m, f));
}

TEST_CASE("translate_conjunct base facts") {
  SUBCASE("ED(true) = 0 is consistent with the base constraints") {
    Formula f = parse_formula("ED(true) = 0");
    auto sys = translate_conjunct(to_dnf(f)[0], atom_basis(f));
    CHECK(lin::feasible(sys).feasible);
    CHECK(lin::feasible_by_elimination(sys).feasible);
  }
  SUBCASE("ED(false) = 1 is absorbed by the mass-sum constraint") {
    Formula f = parse_formula("ED(false) = 1");
    auto sys = translate_conjunct(to_dnf(f)[0], atom_basis(f));
    CHECK(lin::feasible(sys).feasible);
  }
  SUBCASE("contradictory point value and strict bound") {
    Formula f = parse_formula("ED(p) = 0.5 & ED(p) > 0.6");
    auto sys = translate_conjunct(to_dnf(f)[0], atom_basis(f));
    CHECK(!lin::feasible(sys).feasible);
    CHECK(!lin::feasible_by_elimination(sys).feasible);
  }
  SUBCASE("budget") {
    Formula f = parse_formula("ED(a & b & c & d) >= 0");
    CHECK_THROWS_AS(translate_conjunct(to_dnf(f)[0], atom_basis(f), 3), AtomBudgetExceeded);
  }
}

TEST_CASE("check_consistency on hand formulas") {
  SUBCASE("ED(true) = 1 is inconsistent") {
    CHECK(!check_consistency(parse_formula("ED(true) = 1")).consistent);
  }
  SUBCASE("two raised doubts fit under sub-complementarity") {
    SatResult r = check_consistency(parse_formula("ED(p) >= 0.3 & ED(!p) >= 0.3"));
    REQUIRE(r.consistent);
    REQUIRE(r.witness.has_value());
    REQUIRE(r.witness->model != nullptr);
    CHECK(r.witness->model->satisfies(parse_formula("ED(p) >= 0.3 & ED(!p) >= 0.3")));
  }
  SUBCASE("doubts cannot sum above one") {
    CHECK(!check_consistency(parse_formula("ED(p) + ED(!p) > 1")).consistent);
  }
  SUBCASE("other axiom-level contradictions") {
    CHECK(!check_consistency(parse_formula("ED(false) = 0")).consistent);
    CHECK(!check_consistency(parse_formula("ED(p) < 0")).consistent);
  }
  SUBCASE("the running example formula is consistent") {
    SatResult r = check_consistency(
        parse_formula("(2*ED(P & Q) + 0.23*ED(!Q) >= 0.2) | (ED(!P) < 0.1)"));
    CHECK(r.consistent);
  }
  SUBCASE("atom budget is enforced") {
    CHECK_THROWS_AS(check_consistency(parse_formula("ED(a & b & c & d) >= 0")),
                    AtomBudgetExceeded);
  }
}

TEST_CASE("build_model boundary instance k = 0") {
  AtomBasis basis;  // no propositions, single atom "true"
  WitnessModel m = build_model({Rat(0), Rat(1)}, basis);
  CHECK(m.point_count() == 1);
  CHECK(m.prob(0) == 1);
  CHECK(m.ed(m.extension(prop_true())) == 0);
  CHECK(m.ed(m.extension(prop_false())) == 1);
  CHECK(m.e_value(0) == 1);
  CHECK(m.e_value(1) == 0);
}

TEST_CASE("build_model hand-evaluated instance k = 1") {
  Formula f = parse_formula("ED(p) >= 0");
  AtomBasis basis = atom_basis(f);
  REQUIRE(basis.atom_count() == 2);
  // m({1}) = m({2}) = 1/2
  WitnessModel m = build_model({Rat(0), make_rat(1, 2), make_rat(1, 2), Rat(0)}, basis);
  CHECK(m.point_count() == 8);

  // e over single atoms is 1/2, boundaries are forced
  CHECK(m.e_value(0b00) == 1);
  CHECK(m.e_value(0b01) == make_rat(1, 2));
  CHECK(m.e_value(0b10) == make_rat(1, 2));
  CHECK(m.e_value(0b11) == 0);

  // expected distances on the constructed frame reproduce every e_I
  for (AtomSet i = 0; i < 4; ++i) CHECK(m.ed(m.atoms_extension(i)) == m.e_value(i));

  // the proposition p holds exactly on atom 2's points
  CHECK(m.ed(m.extension(prop_atom("p"))) == make_rat(1, 2));
  CHECK(m.ed(m.extension(prop_not(prop_atom("p")))) == make_rat(1, 2));

  // two x points carry probability 1/2 each
  int positive = 0;
  for (long p = 0; p < m.point_count(); ++p)
    if (is_positive(m.prob(p))) {
      ++positive;
      CHECK(m.prob(p) == make_rat(1, 2));
    }
  CHECK(positive == 2);

  // the dense form passes full validation
  Model dense = m.materialize();
  CHECK(dense.space.size() == 8);
  CHECK(satisfies(dense, parse_formula("ED(p) = 0.5")));
}

TEST_CASE("build_model validates the mass and the budget") {
  AtomBasis basis = atom_basis(parse_formula("ED(p) >= 0"));
  CHECK_THROWS_AS(build_model({Rat(0), Rat(1), Rat(1), Rat(0)}, basis), InvalidMass);
  CHECK_THROWS_AS(build_model({make_rat(1, 2), make_rat(1, 2), Rat(0), Rat(0)}, basis),
                  InvalidMass);
  CHECK_THROWS_AS(build_model({Rat(0), make_rat(1, 2), make_rat(1, 2), Rat(0)}, basis, 7),
                  ModelBudgetExceeded);
}

TEST_CASE("soundness loop on sampled masses") {
  Rng rng(70001);
  std::vector<std::string> all_props = {"p", "q"};
  for (int trial = 0; trial < 25; ++trial) {
    int k = static_cast<int>(edtest::pick(rng, 0, 2));
    std::vector<std::string> props(all_props.begin(), all_props.begin() + k);
    // a formula mentioning all k props so the basis is exactly props
    Formula anchor = basic({{Rat(1), props.empty() ? prop_true() : prop_atom(props[0])}},
                           Rel::Ge, Rat(0));
    for (int i = 1; i < k; ++i)
      anchor = f_and(anchor, basic({{Rat(1), prop_atom(props[i])}}, Rel::Ge, Rat(0)));
    AtomBasis basis = atom_basis(anchor);
    REQUIRE(basis.k() == k);

    int n = basis.atom_count();
    std::vector<Rat> mass = edtest::random_atom_mass(rng, n);
    WitnessModel m = build_model(mass, basis);

    // every e_I is reproduced exactly by the constructed space
    for (AtomSet i = 0; i < (AtomSet{1} << n); ++i)
      CHECK(m.ed(m.atoms_extension(i)) == m.e_value(i));

    // the dense form passes all axioms (materialize re-validates)
    Model dense = m.materialize();
    // and its powerset ed table is a doubt function
    if (dense.space.size() <= 8) CHECK(is_doubt_function(ed_set_function(dense.space)));
  }
}

TEST_CASE("random consistent formulas from sampled masses are found consistent") {
  Rng rng(70002);
  std::vector<std::string> all_props = {"p", "q"};
  for (int trial = 0; trial < 30; ++trial) {
    int k = static_cast<int>(edtest::pick(rng, 0, 2));
    std::vector<std::string> props(all_props.begin(), all_props.begin() + k);
    AtomBasis basis;
    basis.props = props;
    int n = basis.atom_count();
    std::vector<Rat> mass = edtest::random_atom_mass(rng, n);
    WitnessModel seed_model = build_model(mass, basis);

    Formula f = nullptr;
    int literals = static_cast<int>(edtest::pick(rng, 1, 4));
    for (int l = 0; l < literals; ++l) {
      AtomSet i = static_cast<AtomSet>(edtest::pick(rng, 0, (1L << n) - 1));
      Rat e = seed_model.e_value(i);
      Prop arg = atom_set_to_prop(i, basis);
      Formula lit;
      switch (edtest::pick(rng, 0, 3)) {
        case 0: lit = basic({{Rat(1), arg}}, Rel::Eq, e); break;
        case 1: lit = basic({{Rat(1), arg}}, Rel::Ge, e); break;
        case 2: lit = basic({{Rat(1), arg}}, Rel::Le, e); break;
        default: lit = basic({{Rat(1), arg}}, Rel::Lt, Rat(e + 1)); break;
      }
      f = f ? f_and(f, lit) : lit;
    }

    SatResult r = check_consistency(f);
    REQUIRE(r.consistent);
    REQUIRE(r.witness.has_value());
    const Witness& w = *r.witness;
    REQUIRE(w.model != nullptr);
    CHECK(w.model->satisfies(f));
    for (std::size_t i = 0; i < w.e.size(); ++i)
      CHECK(w.model->ed(w.model->atoms_extension(static_cast<AtomSet>(i))) == w.e[i]);
  }
}

TEST_CASE("axiom instances hold in random models") {
  Rng rng(70003);
  std::vector<std::string> props = {"P", "Q", "R"};
  for (int trial = 0; trial < 25; ++trial) {
    Model m = edtest::random_model(rng, static_cast<int>(edtest::pick(rng, 2, 5)), props);

    CHECK(satisfies(m, parse_formula("ED(true) = 0")));
    CHECK(satisfies(m, parse_formula("ED(false) = 1")));

    Prop phi = edtest::random_prop(rng, props, 3);
    Prop psi = edtest::random_prop(rng, props, 3);
    Prop chi = edtest::random_prop(rng, props, 2);
    CHECK(satisfies(m, basic({{Rat(1), phi}}, Rel::Ge, Rat(0))));

    // binary and ternary inclusion-exclusion
    CHECK(satisfies(m, basic({{Rat(1), prop_and(phi, psi)},
                              {Rat(-1), phi},
                              {Rat(-1), psi},
                              {Rat(1), prop_or(phi, psi)}},
                             Rel::Ge, Rat(0))));
    CHECK(satisfies(
        m, basic({{Rat(1), prop_and(prop_and(phi, psi), chi)},
                  {Rat(-1), phi},
                  {Rat(-1), psi},
                  {Rat(-1), chi},
                  {Rat(1), prop_or(phi, psi)},
                  {Rat(1), prop_or(phi, chi)},
                  {Rat(1), prop_or(psi, chi)},
                  {Rat(-1), prop_or(prop_or(phi, psi), chi)}},
                 Rel::Ge, Rat(0))));

    // substitution on tautologically equivalent propositions
    Prop equivalent = prop_not(prop_not(phi));
    CHECK(satisfies(m, basic({{Rat(1), phi}, {Rat(-1), equivalent}}, Rel::Eq, Rat(0))));
    Prop de_morgan = prop_not(prop_and(prop_not(phi), prop_not(psi)));
    CHECK(satisfies(
        m, basic({{Rat(1), prop_or(phi, psi)}, {Rat(-1), de_morgan}}, Rel::Eq, Rat(0))));
  }
}

TEST_CASE("entailment regressions") {
  CHECK(entails({}, parse_formula("ED(!p) + ED(p) <= 1")));
  CHECK(entails({}, parse_formula("ED(p) >= ED(p & q) + ED(p & !q) - 1")));
  CHECK(entails({}, parse_formula("ED(p & q) >= ED(p) + ED(q) - ED(p | q)")));
  CHECK(entails({}, parse_formula("ED(p) >= 0")));
  CHECK(entails({parse_formula("ED(p) = 0.3")}, parse_formula("ED(p) >= 0.2")));
  CHECK(!entails({parse_formula("ED(p) = 0.1")}, parse_formula("ED(p) = 0.2")));

  // a conjunction implies its conjuncts, so its expected distance dominates
  CHECK(entails({}, parse_formula("ED(p & q) >= ED(p)")));
  // the reverse direction has countermodels
  SatResult counter = entailment_query({}, parse_formula("ED(p & q) <= ED(p)"));
  REQUIRE(counter.consistent);
  REQUIRE(counter.witness->model != nullptr);
  CHECK(counter.witness->model->satisfies(parse_formula("ED(p & q) > ED(p)")));
}

TEST_CASE("negation coherence") {
  Rng rng(70004);
  std::vector<std::string> props = {"p", "q"};
  for (int trial = 0; trial < 40; ++trial) {
    Formula f = edtest::random_formula(rng, props, 2);
    bool f_consistent = check_consistency(f).consistent;
    bool not_f_consistent = check_consistency(f_not(f)).consistent;
    CHECK((f_consistent || not_f_consistent));
  }
}

TEST_CASE("mass encoding agrees with the direct encoding for small bases") {
  Rng rng(70005);
  std::vector<std::string> props = {"p"};
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    int k = static_cast<int>(edtest::pick(rng, 0, 1));
    std::vector<std::string> used(props.begin(), props.begin() + k);
    Formula f = edtest::random_formula(rng, used, 2);
    AtomBasis basis = atom_basis(f);
    auto dnf = to_dnf(f);
    for (const auto& conjunct : dnf) {
      auto mass_sys = translate_conjunct(conjunct, basis);
      auto direct_sys = translate_conjunct_direct(conjunct, basis);
      bool via_mass = lin::feasible(mass_sys).feasible;
      bool via_direct = lin::feasible(direct_sys).feasible;
      CHECK(via_mass == via_direct);
      CHECK(lin::feasible_by_elimination(mass_sys).feasible == via_mass);
      CHECK(lin::feasible_by_elimination(direct_sys).feasible == via_direct);
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("entailment atom budget propagates") {
  CHECK_THROWS_AS(entails({}, parse_formula("ED(a & b & c & d) >= 0")), AtomBudgetExceeded);
}
