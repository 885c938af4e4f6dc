#pragma once

// Shared test utilities: deterministic random generators for rationals,
// spaces, masses, and formulas, plus small brute-force oracles.

#include <random>
#include <string>
#include <vector>

#include "edlogic/decision.hpp"
#include "edlogic/evidence.hpp"
#include "edlogic/formula.hpp"
#include "edlogic/linarith.hpp"
#include "edlogic/product.hpp"
#include "edlogic/space.hpp"

namespace edtest {

using edlogic::Frame;
using edlogic::MassFunction;
using edlogic::MetricProbSpace;
using edlogic::PointSet;
using edlogic::Rat;
using edlogic::RawSpace;
using edlogic::SetFunction;
using edlogic::SubsetMask;

using Rng = std::mt19937_64;

inline long pick(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// Uniform-ish rational in [0, 1] with denominator <= max_den.
inline Rat random_unit_rat(Rng& rng, long max_den = 12) {
  long den = pick(rng, 1, max_den);
  long num = pick(rng, 0, den);
  return edlogic::make_rat(num, den);
}

// Rational in (0, 1) exclusive.
inline Rat random_interior_rat(Rng& rng, long max_den = 12) {
  long den = pick(rng, 2, max_den);
  long num = pick(rng, 1, den - 1);
  return edlogic::make_rat(num, den);
}

inline Rat random_signed_rat(Rng& rng, long max_abs = 6, long max_den = 6) {
  long den = pick(rng, 1, max_den);
  long num = pick(rng, -max_abs * den, max_abs * den);
  return edlogic::make_rat(num, den);
}

inline std::vector<std::string> point_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  return names;
}

// Random valid space: symmetric random distances closed under min-plus
// (Floyd-Warshall), zero diagonal, probabilities normalized; some points may
// get probability zero.
inline MetricProbSpace random_space(Rng& rng, int n, bool allow_zero_prob = true) {
  RawSpace raw;
  raw.points = point_names(n);
  raw.metric.assign(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rat d = random_unit_rat(rng);
      raw.metric[i][j] = d;
      raw.metric[j][i] = d;
    }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rat via = raw.metric[i][k] + raw.metric[k][j];
        if (via < raw.metric[i][j]) raw.metric[i][j] = via;
      }
  std::vector<long> weights(n);
  long total = 0;
  while (total == 0)
    for (int i = 0; i < n; ++i) {
      weights[i] = pick(rng, allow_zero_prob ? 0 : 1, 8);
      total += weights[i];
    }
  raw.prob.resize(n);
  for (int i = 0; i < n; ++i) raw.prob[i] = edlogic::make_rat(weights[i], total);
  return edlogic::validate_space(raw);
}

// Crisp space: a random partition, distance 0 inside a class and 1 across.
inline MetricProbSpace random_crisp_space(Rng& rng, int n) {
  RawSpace raw;
  raw.points = point_names(n);
  std::vector<int> cls(n);
  for (int i = 0; i < n; ++i) cls[i] = static_cast<int>(pick(rng, 0, std::max(1, n / 2)));
  raw.metric.assign(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) raw.metric[i][j] = Rat(cls[i] == cls[j] ? 0 : 1);
  std::vector<long> weights(n);
  long total = 0;
  while (total == 0)
    for (int i = 0; i < n; ++i) {
      weights[i] = pick(rng, 0, 8);
      total += weights[i];
    }
  raw.prob.resize(n);
  for (int i = 0; i < n; ++i) raw.prob[i] = edlogic::make_rat(weights[i], total);
  return edlogic::validate_space(raw);
}

// Random mass function over n points: nonnegative random weights on nonempty
// subsets, normalized.
inline MassFunction random_mass(Rng& rng, int n) {
  std::size_t size = std::size_t{1} << n;
  std::vector<long> weights(size, 0);
  long total = 0;
  while (total == 0)
    for (std::size_t s = 1; s < size; ++s) {
      weights[s] = pick(rng, 0, 6);
      total += weights[s];
    }
  std::vector<Rat> mass(size, Rat(0));
  for (std::size_t s = 1; s < size; ++s) mass[s] = edlogic::make_rat(weights[s], total);
  return MassFunction(Frame(point_names(n)), std::move(mass));
}

// Random mass over the 2^k atoms of a basis (table indexed by atom subsets).
inline std::vector<Rat> random_atom_mass(Rng& rng, int atom_count) {
  std::size_t size = std::size_t{1} << atom_count;
  std::vector<long> weights(size, 0);
  long total = 0;
  while (total == 0)
    for (std::size_t s = 1; s < size; ++s) {
      weights[s] = pick(rng, 0, 6);
      total += weights[s];
    }
  std::vector<Rat> mass(size, Rat(0));
  for (std::size_t s = 1; s < size; ++s) mass[s] = edlogic::make_rat(weights[s], total);
  return mass;
}

inline PointSet random_subset(Rng& rng, int universe) {
  PointSet s(universe);
  for (int i = 0; i < universe; ++i)
    if (pick(rng, 0, 1)) s.add(i);
  return s;
}

// Random propositional formula over the given atom names.
inline edlogic::Prop random_prop(Rng& rng, const std::vector<std::string>& atoms, int depth) {
  if (depth <= 0 || pick(rng, 0, 3) == 0) {
    long c = pick(rng, 0, static_cast<long>(atoms.size()) + 1);
    if (c < static_cast<long>(atoms.size())) return edlogic::prop_atom(atoms[c]);
    return c == static_cast<long>(atoms.size()) ? edlogic::prop_true() : edlogic::prop_false();
  }
  switch (pick(rng, 0, 2)) {
    case 0: return edlogic::prop_not(random_prop(rng, atoms, depth - 1));
    case 1:
      return edlogic::prop_and(random_prop(rng, atoms, depth - 1),
                               random_prop(rng, atoms, depth - 1));
    default:
      return edlogic::prop_or(random_prop(rng, atoms, depth - 1),
                              random_prop(rng, atoms, depth - 1));
  }
}

inline edlogic::BasicEDFormula random_basic(Rng& rng, const std::vector<std::string>& atoms) {
  edlogic::BasicEDFormula b;
  int terms = static_cast<int>(pick(rng, 1, 3));
  for (int t = 0; t < terms; ++t) {
    Rat coeff = random_signed_rat(rng, 3, 4);
    if (edlogic::is_zero(coeff)) coeff = 1;
    b.term.summands.emplace_back(coeff, random_prop(rng, atoms, 2));
  }
  switch (pick(rng, 0, 4)) {
    case 0: b.rel = edlogic::Rel::Ge; break;
    case 1: b.rel = edlogic::Rel::Gt; break;
    case 2: b.rel = edlogic::Rel::Le; break;
    case 3: b.rel = edlogic::Rel::Lt; break;
    default: b.rel = edlogic::Rel::Eq; break;
  }
  b.bound = random_signed_rat(rng, 2, 8);
  return b;
}

inline edlogic::Formula random_formula(Rng& rng, const std::vector<std::string>& atoms,
                                       int depth) {
  if (depth <= 0 || pick(rng, 0, 2) == 0)
    return edlogic::f_basic(random_basic(rng, atoms));
  switch (pick(rng, 0, 2)) {
    case 0: return edlogic::f_not(random_formula(rng, atoms, depth - 1));
    case 1:
      return edlogic::f_and(random_formula(rng, atoms, depth - 1),
                            random_formula(rng, atoms, depth - 1));
    default:
      return edlogic::f_or(random_formula(rng, atoms, depth - 1),
                           random_formula(rng, atoms, depth - 1));
  }
}

// Random model: a random space plus a random valuation over the given props.
inline edlogic::Model random_model(Rng& rng, int n_points,
                                   const std::vector<std::string>& props) {
  edlogic::Model m{random_space(rng, n_points), {}};
  m.valuation.props = props;
  std::sort(m.valuation.props.begin(), m.valuation.props.end());
  for (int p = 0; p < n_points; ++p)
    m.valuation.truth.push_back(static_cast<std::uint32_t>(
        pick(rng, 0, (1L << m.valuation.props.size()) - 1)));
  return m;
}

// The two-point space of the worked example: d(A,B) = 1/5, P = (1/10, 9/10).
inline MetricProbSpace example_two_point_space() {
  RawSpace raw;
  raw.points = {"A", "B"};
  raw.metric = {{Rat(0), edlogic::make_rat(1, 5)}, {edlogic::make_rat(1, 5), Rat(0)}};
  raw.prob = {edlogic::make_rat(1, 10), edlogic::make_rat(9, 10)};
  return edlogic::validate_space(raw);
}

}  // namespace edtest
