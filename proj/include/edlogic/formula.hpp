#pragma once

// The expected-distance formula language: propositional formulas, linear
// ED terms, basic comparisons, and Boolean combinations thereof.
//
// Concrete grammar (precedence ! > & > |, binary operators left-associative):
//
//   prop    := ident | "true" | "false" | "!" prop | prop "&" prop
//            | prop "|" prop | "(" prop ")"
//   summand := number | [number "*"] "ED" "(" prop ")"
//   expr    := ["+"|"-"] summand (("+"|"-") summand)*
//   basic   := expr (">="|"<="|">"|"<"|"=") expr
//   formula := basic | "!" formula | formula "&" formula
//            | formula "|" formula | "(" formula ")"
//
// Numbers are integers, decimal literals (converted exactly), or "p/q"
// fractions. Both comparison operands are linear expressions; constants are
// folded so a basic formula normalizes to  sum a_i ED(phi_i)  rel  alpha.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "edlogic/errors.hpp"
#include "edlogic/rational.hpp"

namespace edlogic {

// ---------------------------------------------------------------------------
// Propositional layer

struct PropNode;
using Prop = std::shared_ptr<const PropNode>;

struct PropNode {
  enum class Kind { True, False, Atom, Not, And, Or };
  Kind kind;
  std::string name;  // Atom only
  Prop lhs, rhs;     // Not uses lhs; And/Or use both
};

Prop prop_true();
Prop prop_false();
Prop prop_atom(std::string name);
Prop prop_not(Prop p);
Prop prop_and(Prop a, Prop b);
Prop prop_or(Prop a, Prop b);

bool prop_equal(const Prop& a, const Prop& b);
std::string print_prop(const Prop& p);

// Collects atom names, in order of first appearance.
void collect_props(const Prop& p, std::vector<std::string>& out);

// Evaluates under a truth assignment (by atom name).
template <class TruthFn>
bool eval_prop(const Prop& p, const TruthFn& truth) {
  switch (p->kind) {
    case PropNode::Kind::True: return true;
    case PropNode::Kind::False: return false;
    case PropNode::Kind::Atom: return truth(p->name);
    case PropNode::Kind::Not: return !eval_prop(p->lhs, truth);
    case PropNode::Kind::And: return eval_prop(p->lhs, truth) && eval_prop(p->rhs, truth);
    case PropNode::Kind::Or: return eval_prop(p->lhs, truth) || eval_prop(p->rhs, truth);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Expected-distance layer

enum class Rel { Ge, Gt, Le, Lt, Eq };

Rel negate_rel(Rel r);  // Eq has no single-relation negation; throws
std::string rel_str(Rel r);

struct EDTerm {
  // sum of coeff * ED(arg); non-empty.
  std::vector<std::pair<Rat, Prop>> summands;
};

struct BasicEDFormula {
  EDTerm term;
  Rel rel;
  Rat bound;
};

std::string print_basic(const BasicEDFormula& b);

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  enum class Kind { Basic, Not, And, Or };
  Kind kind;
  BasicEDFormula basic;  // Basic only
  Formula lhs, rhs;
};

Formula f_basic(BasicEDFormula b);
Formula f_not(Formula f);
Formula f_and(Formula a, Formula b);
Formula f_or(Formula a, Formula b);

bool formula_equal(const Formula& a, const Formula& b);
std::string print_formula(const Formula& f);

// Parses the grammar above. Throws SyntaxError / UnknownToken with a
// 0-based byte position.
Formula parse_formula(std::string_view text);
Prop parse_prop(std::string_view text);

// ---------------------------------------------------------------------------
// Normal forms and atoms

inline constexpr int kDefaultDnfLiteralCap = 4096;

// Disjunctive normal form: a list of conjuncts, each a list of basic
// formulas. Negation is pushed onto relations (not(t >= a) becomes t < a;
// not(t = a) splits into t < a | t > a). Throws DnfTooLarge past the cap.
std::vector<std::vector<BasicEDFormula>> to_dnf(const Formula& f,
                                                int literal_cap = kDefaultDnfLiteralCap);

// The 2^k sign patterns over the primitive propositions of a formula.
// Atom number i (1-based) has props true per the bits of i-1: bit j set
// means props[j] holds. Atom 1 is all-negative, atom 2^k all-positive.
struct AtomBasis {
  std::vector<std::string> props;  // sorted, distinct
  int k() const { return static_cast<int>(props.size()); }
  int atom_count() const { return 1 << k(); }
};

AtomBasis atom_basis(const Formula& f);

// Atom index sets I, as masks: bit (i-1) set <-> atom i in I.
using AtomSet = std::uint32_t;

// The set of atoms satisfying psi, by evaluating all 2^k assignments.
// Throws UnknownProposition for atoms outside the basis.
AtomSet prop_to_atom_set(const Prop& psi, const AtomBasis& basis);

// The disjunction of the basis atoms in I (prop_false for empty I), each
// atom spelled as its sign-pattern conjunction.
Prop atom_set_to_prop(AtomSet index_set, const AtomBasis& basis);

// Renders an atom index set as "{1,3}" (1-based, ascending).
std::string atom_set_str(AtomSet set, int atom_count);

}  // namespace edlogic
