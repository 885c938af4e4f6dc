#include "edlogic/decision.hpp"

#include <algorithm>
#include <map>

namespace edlogic {

// ---------------------------------------------------------------------------
// Dense-model semantics

namespace {

std::map<std::string, int> prop_index(const std::vector<std::string>& props) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < props.size(); ++i) index[props[i]] = static_cast<int>(i);
  return index;
}

bool compare(const Rat& lhs, Rel rel, const Rat& bound) {
  switch (rel) {
    case Rel::Ge: return lhs >= bound;
    case Rel::Gt: return lhs > bound;
    case Rel::Le: return lhs <= bound;
    case Rel::Lt: return lhs < bound;
    case Rel::Eq: return lhs == bound;
  }
  return false;
}

// EdFn: Prop -> Rat
template <class EdFn>
bool satisfies_rec(const Formula& f, const EdFn& ed_of) {
  switch (f->kind) {
    case FormulaNode::Kind::Basic: {
      Rat lhs = 0;
      for (const auto& [coeff, arg] : f->basic.term.summands) lhs += coeff * ed_of(arg);
      return compare(lhs, f->basic.rel, f->basic.bound);
    }
    case FormulaNode::Kind::Not: return !satisfies_rec(f->lhs, ed_of);
    case FormulaNode::Kind::And:
      return satisfies_rec(f->lhs, ed_of) && satisfies_rec(f->rhs, ed_of);
    case FormulaNode::Kind::Or:
      return satisfies_rec(f->lhs, ed_of) || satisfies_rec(f->rhs, ed_of);
  }
  return false;
}

}  // namespace

PointSet extension(const Model& m, const Prop& psi) {
  auto index = prop_index(m.valuation.props);
  std::vector<std::string> used;
  collect_props(psi, used);
  for (const auto& name : used)
    if (!index.count(name)) throw UnknownProposition(name);
  PointSet out(m.space.size());
  for (int p = 0; p < m.space.size(); ++p) {
    std::uint32_t truth = m.valuation.truth[static_cast<std::size_t>(p)];
    bool holds =
        eval_prop(psi, [&](const std::string& name) { return (truth >> index[name]) & 1; });
    if (holds) out.add(p);
  }
  return out;
}

Rat ed_of_prop(const Model& m, const Prop& psi) {
  return expected_distance(m.space, extension(m, psi));
}

bool satisfies(const Model& m, const Formula& f) {
  return satisfies_rec(f, [&](const Prop& arg) { return ed_of_prop(m, arg); });
}

// ---------------------------------------------------------------------------
// Witness model (Lemma-16-style construction)

WitnessModel::WitnessModel(AtomBasis basis, std::vector<Rat> mass, long point_cap)
    : basis_(std::move(basis)), n_(basis_.atom_count()), mass_(std::move(mass)) {
  if (mass_.size() != (std::size_t{1} << n_))
    throw InvalidMass("mass table must cover all subsets of the atom set");
  if (!is_zero(mass_[0])) throw InvalidMass("m(empty) != 0");
  Rat total = 0;
  for (const Rat& v : mass_) {
    if (is_negative(v)) throw InvalidMass("negative mass " + rat_str(v));
    total += v;
  }
  if (total != 1) throw InvalidMass("total mass " + rat_str(total) + " != 1");

  long points = static_cast<long>(n_) * n_ * (1L << (n_ - 1));
  if (points > point_cap)
    throw ModelBudgetExceeded(std::to_string(points) + " points exceeds cap " +
                              std::to_string(point_cap));

  std::uint32_t full = (n_ == 32) ? ~std::uint32_t{0} : ((std::uint32_t{1} << n_) - 1);
  labels_.reserve(static_cast<std::size_t>(points));
  for (int i = 1; i <= n_; ++i) {
    std::uint32_t avoid = std::uint32_t{1} << (i - 1);
    for (std::uint32_t j = 0; j <= full; ++j) {
      if (j & avoid) continue;
      labels_.push_back(Label{true, i, 0, j});
      std::uint32_t jc = full & ~j;
      prob_.push_back(mass_[jc] / __builtin_popcount(jc));
      names_.push_back("x_" + std::to_string(i) + "_" + atom_set_str(j, n_));
    }
  }
  for (int i = 1; i <= n_; ++i)
    for (int j = 1; j <= n_; ++j) {
      if (j == i) continue;
      std::uint32_t avoid = std::uint32_t{1} << (j - 1);
      for (std::uint32_t k = 0; k <= full; ++k) {
        if (k & avoid) continue;
        labels_.push_back(Label{false, i, j, k});
        prob_.push_back(Rat(0));
        names_.push_back("y_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                         atom_set_str(k, n_));
      }
    }
  for (long p = 0; p < point_count(); ++p)
    if (is_positive(prob_[static_cast<std::size_t>(p)])) support_.push_back(p);
}

int WitnessModel::atom_of(long p) const { return labels_[static_cast<std::size_t>(p)].atom; }

namespace {

// Distance between an x-label and a y-label: zero exactly when the y point
// sits on the x point's slot (same j and K) and its atom is outside K.
inline int xy_dist01(const std::uint32_t x_mask, int x_atom, const std::uint32_t y_mask,
                     int y_atom, int y_partner) {
  if (y_partner == x_atom && y_mask == x_mask &&
      !((y_mask >> (y_atom - 1)) & 1))
    return 0;
  return 1;
}

}  // namespace

Rat WitnessModel::dist(long p, long q) const {
  if (p == q) return 0;
  const Label& a = labels_[static_cast<std::size_t>(p)];
  const Label& b = labels_[static_cast<std::size_t>(q)];
  if (a.is_x && b.is_x) return 1;
  if (a.is_x != b.is_x) {
    const Label& x = a.is_x ? a : b;
    const Label& y = a.is_x ? b : a;
    return xy_dist01(x.mask, x.atom, y.mask, y.atom, y.partner);
  }
  // y-to-y within one slot (same j and K): max of each point's distance to
  // the slot's x point. Across slots the distance is 1; a zero there would
  // break the triangle inequality through the slot's x point.
  if (a.partner != b.partner || a.mask != b.mask) return 1;
  int da = ((a.mask >> (a.atom - 1)) & 1) ? 1 : 0;
  int db = ((b.mask >> (b.atom - 1)) & 1) ? 1 : 0;
  return std::max(da, db);
}

PointSet WitnessModel::atoms_extension(AtomSet index_set) const {
  PointSet out(static_cast<int>(point_count()));
  for (long p = 0; p < point_count(); ++p)
    if ((index_set >> (labels_[static_cast<std::size_t>(p)].atom - 1)) & 1)
      out.add(static_cast<int>(p));
  return out;
}

PointSet WitnessModel::extension(const Prop& psi) const {
  return atoms_extension(prop_to_atom_set(psi, basis_));
}

Rat WitnessModel::set_distance(long p, const PointSet& set) const {
  if (set.contains(static_cast<int>(p))) return 0;
  const Label& a = labels_[static_cast<std::size_t>(p)];
  int best = 2;
  for (long q = 0; q < point_count(); ++q) {
    if (!set.contains(static_cast<int>(q)) || q == p) continue;
    const Label& b = labels_[static_cast<std::size_t>(q)];
    int d;
    if (a.is_x && b.is_x) {
      d = 1;
    } else if (a.is_x != b.is_x) {
      const Label& x = a.is_x ? a : b;
      const Label& y = a.is_x ? b : a;
      d = xy_dist01(x.mask, x.atom, y.mask, y.atom, y.partner);
    } else if (a.partner != b.partner || a.mask != b.mask) {
      d = 1;
    } else {
      int da = ((a.mask >> (a.atom - 1)) & 1) ? 1 : 0;
      int db = ((b.mask >> (b.atom - 1)) & 1) ? 1 : 0;
      d = std::max(da, db);
    }
    if (d < best) {
      best = d;
      if (best == 0) break;
    }
  }
  return best == 2 ? Rat(1) : Rat(best);
}

Rat WitnessModel::ed(const PointSet& set) const {
  Rat sum = 0;
  for (long p : support_) {
    if (set.contains(static_cast<int>(p))) continue;
    sum += set_distance(p, set) * prob_[static_cast<std::size_t>(p)];
  }
  return sum;
}

bool WitnessModel::satisfies(const Formula& f) const {
  return satisfies_rec(f, [&](const Prop& arg) { return ed(extension(arg)); });
}

Rat WitnessModel::e_value(AtomSet index_set) const {
  std::uint32_t full = (std::uint32_t{1} << n_) - 1;
  std::uint32_t complement = full & ~index_set;
  Rat sum = 0;
  std::uint32_t j = complement;
  while (true) {
    sum += mass_[j];
    if (j == 0) break;
    j = (j - 1) & complement;
  }
  return sum;
}

Model WitnessModel::materialize() const {
  RawSpace raw;
  long count = point_count();
  raw.points = names_;
  raw.metric.assign(static_cast<std::size_t>(count), std::vector<Rat>(count));
  for (long p = 0; p < count; ++p)
    for (long q = p; q < count; ++q) {
      Rat d = dist(p, q);
      raw.metric[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = d;
      raw.metric[static_cast<std::size_t>(q)][static_cast<std::size_t>(p)] = d;
    }
  raw.prob = prob_;
  Model m{validate_space(raw), Valuation{}};
  m.valuation.props = basis_.props;
  m.valuation.truth.reserve(static_cast<std::size_t>(count));
  for (long p = 0; p < count; ++p)
    m.valuation.truth.push_back(
        static_cast<std::uint32_t>(labels_[static_cast<std::size_t>(p)].atom - 1));
  return m;
}

WitnessModel build_model(const std::vector<Rat>& mass, const AtomBasis& basis,
                         long point_cap) {
  return WitnessModel(basis, mass, point_cap);
}

// ---------------------------------------------------------------------------
// Translation to linear systems

namespace {

lin::Rel to_lin_rel(Rel r) {
  switch (r) {
    case Rel::Ge: return lin::Rel::Ge;
    case Rel::Gt: return lin::Rel::Gt;
    case Rel::Eq: return lin::Rel::Eq;
    default: throw Error("InternalError", "relation not normalized");
  }
}

// Normalizes a literal to coefficients-on-e_I form with relation Ge/Gt/Eq:
// Le and Lt negate through.
struct NormalizedLiteral {
  std::vector<std::pair<Rat, AtomSet>> terms;  // coeff on e_{I}
  lin::Rel rel;
  Rat rhs;
};

NormalizedLiteral normalize_literal(const BasicEDFormula& lit, const AtomBasis& basis) {
  NormalizedLiteral out;
  bool flip = lit.rel == Rel::Le || lit.rel == Rel::Lt;
  for (const auto& [coeff, arg] : lit.term.summands)
    out.terms.emplace_back(flip ? Rat(-coeff) : coeff, prop_to_atom_set(arg, basis));
  out.rhs = flip ? Rat(-lit.bound) : lit.bound;
  switch (lit.rel) {
    case Rel::Ge:
    case Rel::Le: out.rel = lin::Rel::Ge; break;
    case Rel::Gt:
    case Rel::Lt: out.rel = lin::Rel::Gt; break;
    case Rel::Eq: out.rel = lin::Rel::Eq; break;
  }
  return out;
}

constexpr int kMassEncodingMaxK = 4;  // 2^(2^k) mass variables

}  // namespace

lin::LinearConstraintSystem translate_conjunct(const std::vector<BasicEDFormula>& literals,
                                               const AtomBasis& basis, int atom_budget) {
  if (basis.k() > atom_budget || basis.k() > kMassEncodingMaxK)
    throw AtomBudgetExceeded(std::to_string(basis.k()) + " propositions (budget " +
                             std::to_string(std::min(atom_budget, kMassEncodingMaxK)) + ")");
  int n = basis.atom_count();
  std::uint32_t subsets = std::uint32_t{1} << n;

  lin::LinearConstraintSystem sys;
  sys.variables.reserve(subsets);
  for (std::uint32_t j = 0; j < subsets; ++j)
    sys.variables.push_back("m_" + atom_set_str(j, n));

  auto unit = [&](std::uint32_t j) {
    std::vector<Rat> row(subsets, Rat(0));
    row[j] = 1;
    return row;
  };
  for (std::uint32_t j = 0; j < subsets; ++j) sys.add(unit(j), lin::Rel::Ge, Rat(0));
  sys.add(unit(0), lin::Rel::Eq, Rat(0));
  sys.add(std::vector<Rat>(subsets, Rat(1)), lin::Rel::Eq, Rat(1));

  std::uint32_t full = subsets - 1;
  for (const auto& lit : literals) {
    NormalizedLiteral norm = normalize_literal(lit, basis);
    std::vector<Rat> row(subsets, Rat(0));
    for (const auto& [coeff, index_set] : norm.terms) {
      // e_I = sum of m_J over J within I's complement
      std::uint32_t complement = full & ~index_set;
      std::uint32_t j = complement;
      while (true) {
        row[j] += coeff;
        if (j == 0) break;
        j = (j - 1) & complement;
      }
    }
    sys.add(std::move(row), norm.rel, norm.rhs);
  }
  return sys;
}

lin::LinearConstraintSystem translate_conjunct_direct(
    const std::vector<BasicEDFormula>& literals, const AtomBasis& basis) {
  int n = basis.atom_count();
  if (n > 3)
    throw TooManyVariables("direct encoding enumerates collections of " +
                           std::to_string(1 << n) + " index sets");
  std::uint32_t sets = std::uint32_t{1} << n;  // number of index sets I
  std::uint32_t full = sets - 1;

  lin::LinearConstraintSystem sys;
  for (std::uint32_t i = 0; i < sets; ++i)
    sys.variables.push_back("e_" + atom_set_str(i, n));

  auto unit = [&](std::uint32_t i) {
    std::vector<Rat> row(sets, Rat(0));
    row[i] = 1;
    return row;
  };
  sys.add(unit(0), lin::Rel::Eq, Rat(1));     // e over the empty index set
  sys.add(unit(full), lin::Rel::Eq, Rat(0));  // e over all atoms
  for (std::uint32_t i = 0; i < sets; ++i) sys.add(unit(i), lin::Rel::Ge, Rat(0));

  // Inclusion-exclusion family over every collection of index sets.
  std::uint64_t collections = std::uint64_t{1} << sets;
  for (std::uint64_t coll = 1; coll < collections; ++coll) {
    std::vector<Rat> row(sets, Rat(0));
    std::uint32_t inter = full;
    for (std::uint32_t i = 0; i < sets; ++i)
      if ((coll >> i) & 1) inter &= i;
    row[inter] += 1;
    // subtract sum over nonempty subcollections of (-1)^(r+1) e_{union}
    std::uint64_t sub = coll;
    while (true) {
      std::uint32_t uni = 0;
      for (std::uint32_t i = 0; i < sets; ++i)
        if ((sub >> i) & 1) uni |= i;
      if (__builtin_popcountll(sub) % 2)
        row[uni] -= 1;
      else
        row[uni] += 1;
      sub = (sub - 1) & coll;
      if (sub == 0) break;
    }
    sys.add(std::move(row), lin::Rel::Ge, Rat(0));
  }

  for (const auto& lit : literals) {
    NormalizedLiteral norm = normalize_literal(lit, basis);
    std::vector<Rat> row(sets, Rat(0));
    for (const auto& [coeff, index_set] : norm.terms) row[index_set] += coeff;
    sys.add(std::move(row), norm.rel, norm.rhs);
  }
  return sys;
}

// ---------------------------------------------------------------------------
// The decision pipeline

SatResult check_consistency(const Formula& f, const DecisionConfig& config) {
  AtomBasis basis = atom_basis(f);
  if (basis.k() > config.atom_budget)
    throw AtomBudgetExceeded(std::to_string(basis.k()) + " propositions (budget " +
                             std::to_string(config.atom_budget) + ")");
  auto dnf = to_dnf(f, config.dnf_literal_cap);

  int n = basis.atom_count();
  std::uint32_t subsets = std::uint32_t{1} << n;
  for (std::size_t c = 0; c < dnf.size(); ++c) {
    lin::LinearConstraintSystem sys = translate_conjunct(dnf[c], basis, config.atom_budget);
    lin::FeasibilityResult res = lin::feasible(sys, config.pivot_budget);
    if (!res.feasible) continue;

    Witness w;
    w.basis = basis;
    w.conjunct_index = static_cast<int>(c);
    w.conjunct = dnf[c];
    w.mass.reserve(subsets);
    for (std::uint32_t j = 0; j < subsets; ++j)
      w.mass.push_back(res.assignment.at(sys.variables[j]));

    long points = static_cast<long>(n) * n * (1L << (n - 1));
    if (points <= config.model_point_cap) {
      auto model = std::make_shared<WitnessModel>(basis, w.mass, config.model_point_cap);
      if (!model->satisfies(f))
        throw Error("InternalError", "witness model fails the formula it was built for");
      w.model = std::move(model);
      w.e.reserve(subsets);
      for (std::uint32_t i = 0; i < subsets; ++i) w.e.push_back(w.model->e_value(i));
    } else {
      std::uint32_t full = subsets - 1;
      for (std::uint32_t i = 0; i < subsets; ++i) {
        std::uint32_t complement = full & ~i;
        Rat sum = 0;
        std::uint32_t j = complement;
        while (true) {
          sum += w.mass[j];
          if (j == 0) break;
          j = (j - 1) & complement;
        }
        w.e.push_back(sum);
      }
    }
    return SatResult{true, std::move(w)};
  }
  return SatResult{false, std::nullopt};
}

SatResult entailment_query(const std::vector<Formula>& premises, const Formula& goal,
                           const DecisionConfig& config) {
  Formula query = f_not(goal);
  for (auto it = premises.rbegin(); it != premises.rend(); ++it)
    query = f_and(*it, std::move(query));
  return check_consistency(query, config);
}

bool entails(const std::vector<Formula>& premises, const Formula& goal,
             const DecisionConfig& config) {
  return !entailment_query(premises, goal, config).consistent;
}

}  // namespace edlogic
