#include <doctest.h>

#include <map>
#include <set>

#include "edlogic/formula.hpp"
#include "helpers.hpp"

using namespace edlogic;
using edtest::Rng;

TEST_CASE("parsing the running example formula") {
  Formula f = parse_formula("(2*ED(P & Q) + 0.23*ED(!Q) >= 0.2) | (ED(!P) < 0.1)");
  REQUIRE(f->kind == FormulaNode::Kind::Or);
  const BasicEDFormula& left = f->lhs->basic;
  REQUIRE(left.term.summands.size() == 2);
  CHECK(left.term.summands[0].first == 2);
  CHECK(left.term.summands[1].first == make_rat(23, 100));
  CHECK(left.rel == Rel::Ge);
  CHECK(left.bound == make_rat(1, 5));
  const BasicEDFormula& right = f->rhs->basic;
  CHECK(right.rel == Rel::Lt);
  CHECK(right.bound == make_rat(1, 10));
  CHECK(print_prop(right.term.summands[0].second) == "!P");
}

TEST_CASE("parsing ED terms on both sides and constants") {
  Formula f = parse_formula("ED(p & q) >= ED(p) + ED(q) - ED(p | q)");
  const BasicEDFormula& b = f->basic;
  REQUIRE(b.term.summands.size() == 4);
  CHECK(b.term.summands[0].first == 1);
  CHECK(b.term.summands[1].first == -1);
  CHECK(b.term.summands[2].first == -1);
  CHECK(b.term.summands[3].first == 1);
  CHECK(b.bound == 0);

  Formula g = parse_formula("ED(p) >= ED(p & q) + ED(p & !q) - 1");
  CHECK(g->basic.bound == -1);
  REQUIRE(g->basic.term.summands.size() == 3);

  Formula h = parse_formula("ED(p) + 1/2 <= 2");
  CHECK(h->basic.bound == make_rat(3, 2));
}

TEST_CASE("equality surface form") {
  Formula f = parse_formula("ED(true) = 0");
  REQUIRE(f->kind == FormulaNode::Kind::Basic);
  CHECK(f->basic.rel == Rel::Eq);
  CHECK(f->basic.bound == 0);
  CHECK(f->basic.term.summands[0].second->kind == PropNode::Kind::True);
}

TEST_CASE("syntax errors carry positions") {
  CHECK_THROWS_AS(parse_formula("ED(P"), SyntaxError);
  try {
    parse_formula("ED(P");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse_formula("ED(P) >= "), SyntaxError);
  CHECK_THROWS_AS(parse_formula("ED(P) 1"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("2 >= 1"), SyntaxError);  // no ED term
  CHECK_THROWS_AS(parse_formula("ED(P) >= 0.1 extra"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("ED(P) >= $"), UnknownToken);
  CHECK_THROWS_AS(parse_formula("ED(ED(P) >= 0) >= 0"), SyntaxError);  // no nesting
}

TEST_CASE("negative coefficients and signs") {
  Formula f = parse_formula("-ED(p) - 2*ED(q) >= -1");
  REQUIRE(f->basic.term.summands.size() == 2);
  CHECK(f->basic.term.summands[0].first == -1);
  CHECK(f->basic.term.summands[1].first == -2);
  CHECK(f->basic.bound == -1);
}

TEST_CASE("print-parse round trip on random formulas") {
  Rng rng(50001);
  std::vector<std::string> atoms = {"P", "Q", "R"};
  for (int trial = 0; trial < 200; ++trial) {
    Formula f = edtest::random_formula(rng, atoms, 3);
    std::string text = print_formula(f);
    Formula back = parse_formula(text);
    CHECK(formula_equal(f, back));
    // printing is canonical from then on
    CHECK(print_formula(back) == text);
  }
}

TEST_CASE("prop print-parse round trip") {
  Rng rng(50002);
  std::vector<std::string> atoms = {"a", "b", "c"};
  for (int trial = 0; trial < 200; ++trial) {
    Prop p = edtest::random_prop(rng, atoms, 4);
    CHECK(prop_equal(p, parse_prop(print_prop(p))));
  }
}

// three-valued state of a (term, bound) pair: below, equal, above
namespace {

using BasicState = int;  // 0: lhs < bound, 1: equal, 2: above

std::string basic_key(const BasicEDFormula& b) {
  std::string key;
  for (const auto& [coeff, arg] : b.term.summands)
    key += rat_str(coeff) + "*ED(" + print_prop(arg) + ")+";
  return key + "@" + rat_str(b.bound);
}

bool eval_basic_state(const BasicEDFormula& b, BasicState s) {
  switch (b.rel) {
    case Rel::Ge: return s >= 1;
    case Rel::Gt: return s == 2;
    case Rel::Le: return s <= 1;
    case Rel::Lt: return s == 0;
    case Rel::Eq: return s == 1;
  }
  return false;
}

bool eval_formula_states(const Formula& f, const std::map<std::string, BasicState>& states) {
  switch (f->kind) {
    case FormulaNode::Kind::Basic:
      return eval_basic_state(f->basic, states.at(basic_key(f->basic)));
    case FormulaNode::Kind::Not: return !eval_formula_states(f->lhs, states);
    case FormulaNode::Kind::And:
      return eval_formula_states(f->lhs, states) && eval_formula_states(f->rhs, states);
    case FormulaNode::Kind::Or:
      return eval_formula_states(f->lhs, states) || eval_formula_states(f->rhs, states);
  }
  return false;
}

void collect_keys(const Formula& f, std::set<std::string>& keys) {
  switch (f->kind) {
    case FormulaNode::Kind::Basic: keys.insert(basic_key(f->basic)); break;
    case FormulaNode::Kind::Not: collect_keys(f->lhs, keys); break;
    case FormulaNode::Kind::And:
    case FormulaNode::Kind::Or:
      collect_keys(f->lhs, keys);
      collect_keys(f->rhs, keys);
      break;
  }
}

bool eval_dnf_states(const std::vector<std::vector<BasicEDFormula>>& dnf,
                     const std::map<std::string, BasicState>& states) {
  for (const auto& conjunct : dnf) {
    bool all = true;
    for (const auto& lit : conjunct)
      if (!eval_basic_state(lit, states.at(basic_key(lit)))) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("DNF structure on hand examples") {
  SUBCASE("De Morgan over a conjunction") {
    Formula f = parse_formula("!(ED(p) >= 0.5 & ED(q) >= 0.5)");
    auto dnf = to_dnf(f);
    REQUIRE(dnf.size() == 2);
    CHECK(dnf[0].size() == 1);
    CHECK(dnf[0][0].rel == Rel::Lt);  // negation became a strict relation
    CHECK(dnf[1][0].rel == Rel::Lt);
  }
  SUBCASE("already in DNF") {
    Formula f = parse_formula("ED(p) >= 0.5 & ED(q) >= 0.5 | ED(p) < 0.1");
    auto dnf = to_dnf(f);
    REQUIRE(dnf.size() == 2);
    CHECK(dnf[0].size() == 2);
    CHECK(dnf[1].size() == 1);
  }
  SUBCASE("the running example makes two conjuncts") {
    Formula f = parse_formula("(2*ED(P & Q) + 0.23*ED(!Q) >= 0.2) | (ED(!P) < 0.1)");
    CHECK(to_dnf(f).size() == 2);
  }
  SUBCASE("negated equality splits") {
    Formula f = parse_formula("!(ED(p) = 0.5)");
    auto dnf = to_dnf(f);
    REQUIRE(dnf.size() == 2);
    CHECK(dnf[0][0].rel == Rel::Lt);
    CHECK(dnf[1][0].rel == Rel::Gt);
  }
  SUBCASE("literal cap") {
    Formula f = parse_formula(
        "(ED(a) >= 0 | ED(b) >= 0) & (ED(c) >= 0 | ED(d) >= 0) & "
        "(ED(e) >= 0 | ED(g) >= 0)");
    CHECK_THROWS_AS(to_dnf(f, 5), DnfTooLarge);
  }
}

TEST_CASE("DNF preserves semantics over all basic-formula states") {
  Rng rng(50003);
  std::vector<std::string> atoms = {"P", "Q"};
  for (int trial = 0; trial < 120; ++trial) {
    Formula f = edtest::random_formula(rng, atoms, 3);
    std::set<std::string> keys;
    collect_keys(f, keys);
    if (keys.size() > 6) continue;
    auto dnf = to_dnf(f, 1 << 16);

    std::vector<std::string> key_list(keys.begin(), keys.end());
    long combos = 1;
    for (std::size_t i = 0; i < key_list.size(); ++i) combos *= 3;
    for (long c = 0; c < combos; ++c) {
      std::map<std::string, BasicState> states;
      long rest = c;
      for (const auto& key : key_list) {
        states[key] = static_cast<BasicState>(rest % 3);
        rest /= 3;
      }
      CHECK(eval_formula_states(f, states) == eval_dnf_states(dnf, states));
    }
  }
}

TEST_CASE("atom basis") {
  SUBCASE("two propositions, four atoms") {
    Formula f = parse_formula("ED(P & Q) >= 0.1");
    AtomBasis basis = atom_basis(f);
    CHECK(basis.k() == 2);
    CHECK(basis.atom_count() == 4);
    CHECK(basis.props == std::vector<std::string>{"P", "Q"});
  }
  SUBCASE("no propositions") {
    AtomBasis basis = atom_basis(parse_formula("ED(true) = 0"));
    CHECK(basis.k() == 0);
    CHECK(basis.atom_count() == 1);
  }
  SUBCASE("duplicates count once") {
    AtomBasis basis = atom_basis(parse_formula("ED(P & P) + ED(P | P) >= 0 & ED(P) < 1"));
    CHECK(basis.k() == 1);
  }
}

TEST_CASE("prop_to_atom_set basics") {
  AtomBasis basis = atom_basis(parse_formula("ED(P & Q) >= 0.1"));
  CHECK(prop_to_atom_set(prop_true(), basis) == 0b1111);
  CHECK(prop_to_atom_set(prop_false(), basis) == 0);
  // P & Q holds exactly in the all-positive atom (pattern 11, atom 4)
  CHECK(prop_to_atom_set(parse_prop("P & Q"), basis) == 0b1000);
  CHECK_THROWS_AS(prop_to_atom_set(parse_prop("R"), basis), UnknownProposition);
}

TEST_CASE("prop_to_atom_set respects Boolean structure") {
  Rng rng(50004);
  std::vector<std::string> atoms = {"P", "Q"};
  AtomBasis basis = atom_basis(parse_formula("ED(P) + ED(Q) >= 0"));
  AtomSet full = (AtomSet{1} << basis.atom_count()) - 1;
  for (int trial = 0; trial < 100; ++trial) {
    Prop a = edtest::random_prop(rng, atoms, 3);
    Prop b = edtest::random_prop(rng, atoms, 3);
    CHECK(prop_to_atom_set(prop_not(a), basis) == (full & ~prop_to_atom_set(a, basis)));
    CHECK(prop_to_atom_set(prop_and(a, b), basis) ==
          (prop_to_atom_set(a, basis) & prop_to_atom_set(b, basis)));
    CHECK(prop_to_atom_set(prop_or(a, b), basis) ==
          (prop_to_atom_set(a, basis) | prop_to_atom_set(b, basis)));
  }
}

TEST_CASE("atom_set_to_prop inverts prop_to_atom_set") {
  Rng rng(50005);
  AtomBasis basis = atom_basis(parse_formula("ED(P & Q) >= 0"));
  for (AtomSet set = 0; set < 16; ++set)
    CHECK(prop_to_atom_set(atom_set_to_prop(set, basis), basis) == set);
  // k = 0
  AtomBasis empty_basis = atom_basis(parse_formula("ED(true) = 0"));
  CHECK(prop_to_atom_set(atom_set_to_prop(1, empty_basis), empty_basis) == 1);
  CHECK(prop_to_atom_set(atom_set_to_prop(0, empty_basis), empty_basis) == 0);
}

TEST_CASE("atom_set_str format") {
  CHECK(atom_set_str(0, 4) == "{}");
  CHECK(atom_set_str(0b0101, 4) == "{1,3}");
  CHECK(atom_set_str(0b1111, 4) == "{1,2,3,4}");
}
