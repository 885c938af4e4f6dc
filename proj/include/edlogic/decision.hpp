#pragma once

// Semantics of the expected-distance language and the consistency /
// entailment decision pipeline.
//
// A formula is checked by converting to DNF, translating each conjunct into
// an exact linear system over mass variables m_J (one per subset J of the
// atom set), and testing feasibility. ED(psi) occurrences expand through
// e_I = sum of m_J over J subseteq I^c, where I is the atom set of psi.
// A feasible mass yields an explicit witness model whose expected distances
// reproduce every e_I exactly.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "edlogic/errors.hpp"
#include "edlogic/formula.hpp"
#include "edlogic/linarith.hpp"
#include "edlogic/rational.hpp"
#include "edlogic/space.hpp"

namespace edlogic {

struct DecisionConfig {
  int atom_budget = 3;          // max primitive propositions k
  long model_point_cap = 10000; // witness frames have n^2 * 2^(n-1) points
  int dnf_literal_cap = 4096;
  long pivot_budget = lin::kDefaultPivotBudget;
};

// ---------------------------------------------------------------------------
// Models

struct Valuation {
  std::vector<std::string> props;     // vocabulary
  std::vector<std::uint32_t> truth;   // per point: bit j set <-> props[j] true
};

struct Model {
  MetricProbSpace space;
  Valuation valuation;
};

// Points where psi holds under the valuation. Throws UnknownProposition.
PointSet extension(const Model& m, const Prop& psi);

// ed of the extension of psi.
Rat ed_of_prop(const Model& m, const Prop& psi);

// Recursive evaluation; basic formulas compare sum a_i ed(phi_i^M) with the
// bound exactly.
bool satisfies(const Model& m, const Formula& f);

// ---------------------------------------------------------------------------
// Witness construction

// The explicit model realizing prescribed e_I values from a mass function
// over atom subsets: points x_{i,J} (atom i, J over the other atoms) with
// P = m_{J^c}/|J^c|, and probability-zero points y_{i,j,K}; distances take
// values in {0,1} and are derived from the labels on demand rather than
// stored as a matrix.
class WitnessModel {
 public:
  WitnessModel(AtomBasis basis, std::vector<Rat> mass, long point_cap);

  const AtomBasis& basis() const { return basis_; }
  int atom_count() const { return n_; }
  const std::vector<Rat>& mass() const { return mass_; }

  long point_count() const { return static_cast<long>(labels_.size()); }
  const std::string& point_name(long p) const { return names_[static_cast<std::size_t>(p)]; }
  const Rat& prob(long p) const { return prob_[static_cast<std::size_t>(p)]; }
  int atom_of(long p) const;  // 1-based atom index
  Rat dist(long p, long q) const;

  PointSet atoms_extension(AtomSet index_set) const;
  PointSet extension(const Prop& psi) const;
  Rat set_distance(long p, const PointSet& set) const;
  Rat ed(const PointSet& set) const;
  bool satisfies(const Formula& f) const;

  // e_I = sum of m_J over J subseteq I^c.
  Rat e_value(AtomSet index_set) const;

  // Dense standard-space form plus valuation. Quadratic in point count.
  Model materialize() const;

 private:
  struct Label {
    bool is_x;
    int atom;            // i, 1-based
    int partner;         // y only: j, 1-based
    std::uint32_t mask;  // J (x) or K (y), 0-based atom mask
  };

  AtomBasis basis_;
  int n_ = 0;
  std::vector<Rat> mass_;
  std::vector<Label> labels_;
  std::vector<std::string> names_;
  std::vector<Rat> prob_;
  std::vector<long> support_;  // points with positive probability
};

// Validates the mass (m >= 0, m(empty) = 0, sum 1; throws InvalidMass) and
// the point budget (throws ModelBudgetExceeded), then constructs the model.
WitnessModel build_model(const std::vector<Rat>& mass, const AtomBasis& basis,
                         long point_cap = DecisionConfig{}.model_point_cap);

// ---------------------------------------------------------------------------
// Translation and decision

// Linear system over mass variables m_J: base constraints m_J >= 0,
// m_empty = 0, sum m_J = 1, plus one row per literal with each ED(psi)
// expanded into mass variables. Negated-literal strictness is carried by
// the relation on each basic formula. Throws AtomBudgetExceeded when the
// basis is over budget (2^(2^k) mass variables otherwise).
lin::LinearConstraintSystem translate_conjunct(const std::vector<BasicEDFormula>& literals,
                                               const AtomBasis& basis, int atom_budget = 3);

// The direct encoding over e_I variables, with the full inclusion-exclusion
// constraint family over collections of index sets. Doubly exponential;
// usable only for k <= 1, as a differential check of the mass encoding.
lin::LinearConstraintSystem translate_conjunct_direct(
    const std::vector<BasicEDFormula>& literals, const AtomBasis& basis);

struct Witness {
  AtomBasis basis;
  std::vector<Rat> mass;  // by subset-of-atoms mask J
  std::vector<Rat> e;     // by atom index set I
  int conjunct_index = 0;
  std::vector<BasicEDFormula> conjunct;
  std::shared_ptr<const WitnessModel> model;  // null if over the point cap
};

struct SatResult {
  bool consistent = false;
  std::optional<Witness> witness;
};

// DNF -> translate -> feasibility, first feasible conjunct wins. The witness
// model, when built, is re-checked against the formula before returning.
SatResult check_consistency(const Formula& f, const DecisionConfig& config = {});

// Consistency of (premise_1 & ... & premise_m & !goal); the witness of a
// consistent query is a countermodel of the entailment.
SatResult entailment_query(const std::vector<Formula>& premises, const Formula& goal,
                           const DecisionConfig& config = {});

// True iff the query above is inconsistent.
bool entails(const std::vector<Formula>& premises, const Formula& goal,
             const DecisionConfig& config = {});

}  // namespace edlogic
