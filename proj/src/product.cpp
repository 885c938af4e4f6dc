#include "edlogic/product.hpp"

#include <algorithm>

namespace edlogic {

namespace {

// Exhaustive PMet3 is cubic; beyond this the metric's closed form carries it.
constexpr long kTriangleCheckCap = 64;

}  // namespace

Rat lambda_combine(const std::vector<Rat>& distances) {
  Rat prod = 1;
  for (const Rat& d : distances) {
    if (is_negative(d) || d > 1)
      throw OutOfRange("distance " + rat_str(d) + " outside [0, 1]");
    prod *= (1 - d);
  }
  return 1 - prod;
}

ProductSpace ProductSpace::build(std::vector<MetricProbSpace> components,
                                 std::optional<std::vector<Rat>> joint, long max_tuples) {
  if (components.empty()) throw FormatError("product needs at least one component");
  long count = 1;
  for (const auto& c : components) {
    if (c.size() > max_tuples / count)
      throw FrameTooLarge("product frame exceeds " + std::to_string(max_tuples) + " tuples");
    count *= c.size();
  }

  ProductSpace ps;
  ps.components_ = std::move(components);
  ps.strides_.assign(ps.components_.size(), 1);
  for (int i = static_cast<int>(ps.components_.size()) - 2; i >= 0; --i)
    ps.strides_[i] = ps.strides_[i + 1] * ps.components_[i + 1].size();

  if (joint) {
    if (static_cast<long>(joint->size()) != count)
      throw InvalidJoint("joint table has " + std::to_string(joint->size()) + " entries, " +
                         "product frame has " + std::to_string(count));
    Rat total = 0;
    for (const Rat& w : *joint) {
      if (is_negative(w)) throw InvalidJoint("negative joint entry " + rat_str(w));
      total += w;
    }
    if (total != 1) throw InvalidJoint("joint total " + rat_str(total) + " != 1");
    ps.joint_ = std::move(*joint);
  } else {
    ps.joint_.resize(static_cast<std::size_t>(count));
    for (long t = 0; t < count; ++t) {
      Rat w = 1;
      auto tuple = ps.tuple_of(t);
      for (int i = 0; i < ps.arity(); ++i) w *= ps.components_[i].weight(tuple[i]);
      ps.joint_[static_cast<std::size_t>(t)] = w;
    }
  }

  if (count <= kTriangleCheckCap) {
    for (long x = 0; x < count; ++x)
      for (long y = 0; y < count; ++y) {
        if (x == y) continue;
        Rat dxy = ps.tuple_distance(x, y);
        for (long z = 0; z < count; ++z)
          if (dxy + ps.tuple_distance(y, z) < ps.tuple_distance(x, z))
            throw AxiomViolation("PMet3",
                                 {ps.tuple_name(x), ps.tuple_name(y), ps.tuple_name(z)},
                                 "product metric triangle inequality failed");
      }
  }
  return ps;
}

const MetricProbSpace& ProductSpace::component(int i) const {
  if (i < 0 || i >= arity()) throw UnknownComponent("component " + std::to_string(i));
  return components_[static_cast<std::size_t>(i)];
}

std::vector<int> ProductSpace::tuple_of(long index) const {
  std::vector<int> tuple(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) {
    tuple[i] = static_cast<int>(index / strides_[i]);
    index %= strides_[i];
  }
  return tuple;
}

long ProductSpace::index_of(const std::vector<int>& tuple) const {
  if (tuple.size() != components_.size()) throw FormatError("tuple arity mismatch");
  long index = 0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (tuple[i] < 0 || tuple[i] >= components_[i].size())
      throw UnknownPoint("tuple coordinate " + std::to_string(tuple[i]));
    index += strides_[i] * tuple[i];
  }
  return index;
}

std::string ProductSpace::tuple_name(long index) const {
  auto tuple = tuple_of(index);
  std::string name;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) name += "|";
    name += components_[i].frame().point(tuple[i]);
  }
  return name;
}

Rat ProductSpace::tuple_distance(long a, long b) const {
  auto ta = tuple_of(a), tb = tuple_of(b);
  Rat prod = 1;
  for (std::size_t i = 0; i < components_.size(); ++i)
    prod *= (1 - components_[i].dist(ta[i], tb[i]));
  return 1 - prod;
}

Rat ProductSpace::ed(const PointSet& tuples) const {
  if (tuples.universe() != tuple_count())
    throw FormatError("tuple set universe does not match product frame");
  Rat sum = 0;
  for (long x = 0; x < tuple_count(); ++x) {
    if (is_zero(joint_prob(x)) || tuples.contains(x)) continue;
    bool found = false;
    Rat best;
    for (long y = 0; y < tuple_count(); ++y) {
      if (!tuples.contains(y)) continue;
      Rat d = tuple_distance(x, y);
      if (!found || d < best) {
        best = d;
        found = true;
        if (is_zero(best)) break;
      }
    }
    sum += (found ? best : Rat(1)) * joint_prob(x);
  }
  return sum;
}

PointSet ProductSpace::cylinder(int component, const PointSet& a) const {
  const MetricProbSpace& comp = this->component(component);
  if (a.universe() != comp.size())
    throw FormatError("cylinder set universe does not match component frame");
  PointSet out(static_cast<int>(tuple_count()));
  for (long t = 0; t < tuple_count(); ++t)
    if (a.contains(tuple_of(t)[static_cast<std::size_t>(component)])) out.add(static_cast<int>(t));
  return out;
}

MetricProbSpace ProductSpace::expand() const {
  RawSpace raw;
  long count = tuple_count();
  raw.points.reserve(static_cast<std::size_t>(count));
  for (long t = 0; t < count; ++t) raw.points.push_back(tuple_name(t));
  raw.metric.assign(static_cast<std::size_t>(count), std::vector<Rat>(count));
  for (long x = 0; x < count; ++x)
    for (long y = x; y < count; ++y) {
      Rat d = tuple_distance(x, y);
      raw.metric[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = d;
      raw.metric[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = d;
    }
  raw.prob = joint_;
  return validate_space(raw);
}

Rat product_set_distance(const ProductSpace& ps, const std::vector<int>& x,
                         const std::vector<PointSet>& rects) {
  if (static_cast<int>(rects.size()) != ps.arity() ||
      static_cast<int>(x.size()) != ps.arity())
    throw FormatError("rectangle arity does not match product");
  for (int i = 0; i < ps.arity(); ++i)
    if (rects[static_cast<std::size_t>(i)].empty())
      throw EmptyComponentSet("component " + std::to_string(i) + " set is empty");

  // product formula: 1 - prod(1 - d_i(x_i, A_i))
  std::vector<Rat> parts;
  parts.reserve(static_cast<std::size_t>(ps.arity()));
  for (int i = 0; i < ps.arity(); ++i)
    parts.push_back(
        set_distance(ps.component(i), x[static_cast<std::size_t>(i)], rects[static_cast<std::size_t>(i)]));
  Rat via_formula = lambda_combine(parts);

  // direct minimum over the rectangle
  long xi = ps.index_of(x);
  bool found = false;
  Rat best;
  std::vector<int> y(static_cast<std::size_t>(ps.arity()), 0);
  std::vector<std::vector<int>> choices;
  for (int i = 0; i < ps.arity(); ++i)
    choices.push_back(rects[static_cast<std::size_t>(i)].indices());
  std::vector<std::size_t> pos(static_cast<std::size_t>(ps.arity()), 0);
  while (true) {
    for (int i = 0; i < ps.arity(); ++i)
      y[static_cast<std::size_t>(i)] = choices[static_cast<std::size_t>(i)][pos[static_cast<std::size_t>(i)]];
    Rat d = ps.tuple_distance(xi, ps.index_of(y));
    if (!found || d < best) {
      best = d;
      found = true;
    }
    int i = ps.arity() - 1;
    while (i >= 0 && ++pos[static_cast<std::size_t>(i)] == choices[static_cast<std::size_t>(i)].size()) {
      pos[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }

  if (via_formula != best)
    throw Error("InternalError", "product-formula distance " + rat_str(via_formula) +
                                     " disagrees with direct minimum " + rat_str(best));
  return via_formula;
}

Rat rectangle_distance(const ProductSpace& ps, const std::vector<PointSet>& a,
                       const std::vector<PointSet>& b) {
  PointSet ta(static_cast<int>(ps.tuple_count())), tb(static_cast<int>(ps.tuple_count()));
  for (long t = 0; t < ps.tuple_count(); ++t) {
    auto tuple = ps.tuple_of(t);
    bool in_a = true, in_b = true;
    for (int i = 0; i < ps.arity(); ++i) {
      in_a = in_a && a[static_cast<std::size_t>(i)].contains(tuple[static_cast<std::size_t>(i)]);
      in_b = in_b && b[static_cast<std::size_t>(i)].contains(tuple[static_cast<std::size_t>(i)]);
    }
    if (in_a) ta.add(static_cast<int>(t));
    if (in_b) tb.add(static_cast<int>(t));
  }
  if (ta.empty() || tb.empty()) return 1;
  bool found = false;
  Rat best;
  for (long x = 0; x < ps.tuple_count(); ++x) {
    if (!ta.contains(x)) continue;
    for (long y = 0; y < ps.tuple_count(); ++y) {
      if (!tb.contains(y)) continue;
      Rat d = ps.tuple_distance(x, y);
      if (!found || d < best) {
        best = d;
        found = true;
      }
    }
  }
  return best;
}

bool independent_relative_to_ed(const ProductSpace& ps,
                                const std::vector<std::pair<int, PointSet>>& events) {
  std::vector<bool> seen(static_cast<std::size_t>(ps.arity()), false);
  for (const auto& [comp, set] : events) {
    if (comp < 0 || comp >= ps.arity())
      throw UnknownComponent("component " + std::to_string(comp));
    if (seen[static_cast<std::size_t>(comp)])
      throw UnknownComponent("component " + std::to_string(comp) + " listed twice");
    seen[static_cast<std::size_t>(comp)] = true;
    if (set.universe() != ps.component(comp).size())
      throw FormatError("event universe does not match component frame");
  }

  int m = static_cast<int>(events.size());
  std::vector<PointSet> cylinders;
  std::vector<Rat> one_minus_ed;
  cylinders.reserve(static_cast<std::size_t>(m));
  for (const auto& [comp, set] : events) {
    cylinders.push_back(ps.cylinder(comp, set));
    one_minus_ed.push_back(1 - ps.ed(cylinders.back()));
  }

  for (std::uint32_t sub = 1; sub < (std::uint32_t{1} << m); ++sub) {
    PointSet inter = PointSet::full(static_cast<int>(ps.tuple_count()));
    Rat rhs = 1;
    for (int i = 0; i < m; ++i)
      if ((sub >> i) & 1) {
        inter = inter.intersect(cylinders[static_cast<std::size_t>(i)]);
        rhs *= one_minus_ed[static_cast<std::size_t>(i)];
      }
    if (1 - ps.ed(inter) != rhs) return false;
  }
  return true;
}

}  // namespace edlogic
