#pragma once

// Exact-rational feasibility of linear constraint systems with mixed
// strict/non-strict relations.
//
// Two independent deciders share one contract: a simplex-based solver
// (strictness via a maximized global slack) and a Fourier-Motzkin
// elimination oracle for cross-checking. Both are sound and complete over
// the rationals, and both verify the returned assignment by substitution.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edlogic/errors.hpp"
#include "edlogic/rational.hpp"

namespace edlogic {
namespace lin {

enum class Rel { Ge, Gt, Eq };

std::string rel_str(Rel r);

struct Constraint {
  std::vector<Rat> coeffs;  // aligned with system variables
  Rel rel;
  Rat rhs;
};

struct LinearConstraintSystem {
  std::vector<std::string> variables;
  std::vector<Constraint> constraints;

  void add(std::vector<Rat> coeffs, Rel rel, Rat rhs);
};

struct FeasibilityResult {
  bool feasible = false;
  std::map<std::string, Rat> assignment;  // present iff feasible
};

// True iff the assignment satisfies every constraint exactly.
bool satisfies_all(const LinearConstraintSystem& sys,
                   const std::map<std::string, Rat>& assignment);

inline constexpr long kDefaultPivotBudget = 200000;

// Sound and complete: feasible iff a rational point satisfies every
// constraint, strict ones strictly. Throws ResourceLimit past the pivot
// budget. The returned assignment is substitution-checked before returning.
FeasibilityResult feasible(const LinearConstraintSystem& sys,
                           long pivot_budget = kDefaultPivotBudget);

inline constexpr int kDefaultEliminationVarCap = 12;

// Same contract, by Fourier-Motzkin elimination with strict-inequality
// tracking. Throws TooManyVariables above the cap.
FeasibilityResult feasible_by_elimination(const LinearConstraintSystem& sys,
                                          int max_variables = kDefaultEliminationVarCap);

// Debug dump, one constraint per line: "3/2*x + -1*y >= 7/3".
std::string dump(const LinearConstraintSystem& sys);

// Parses the dump format back into a system (variables in first-seen order).
LinearConstraintSystem parse_system(const std::string& text);

}  // namespace lin
}  // namespace edlogic
