#include "edlogic/space.hpp"

#include <cstdint>

namespace edlogic {

PseudoMetric::PseudoMetric(int n, std::vector<Rat> cells) : n_(n), cells_(std::move(cells)) {
  if (cells_.size() != static_cast<std::size_t>(n) * n)
    throw FormatError("metric matrix size mismatch");
}

MetricProbSpace::MetricProbSpace(Frame f, PseudoMetric m, ProbabilityDist p)
    : frame_(std::move(f)), metric_(std::move(m)), prob_(std::move(p)) {}

namespace {

// Triangle check for a matrix whose entries are all 0 or 1: a violation is a
// zero-distance chain x-y, y-z with d(x,z) = 1, so the zero-neighborhood of y
// must be contained in the zero-neighborhood of each of its members.
bool crisp_triangle_ok(const PseudoMetric& m, int n, int* bad_x, int* bad_y, int* bad_z) {
  int words = (n + 63) / 64;
  std::vector<std::uint64_t> zero(static_cast<std::size_t>(n) * words, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (is_zero(m.at(i, j))) zero[static_cast<std::size_t>(i) * words + (j >> 6)] |=
          std::uint64_t{1} << (j & 63);
  for (int y = 0; y < n; ++y) {
    const std::uint64_t* zy = &zero[static_cast<std::size_t>(y) * words];
    for (int x = 0; x < n; ++x) {
      if (!((zy[x >> 6] >> (x & 63)) & 1)) continue;
      const std::uint64_t* zx = &zero[static_cast<std::size_t>(x) * words];
      for (int w = 0; w < words; ++w) {
        std::uint64_t missing = zy[w] & ~zx[w];
        if (missing) {
          *bad_x = x;
          *bad_y = y;
          *bad_z = w * 64 + __builtin_ctzll(missing);
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

MetricProbSpace validate_space(const RawSpace& raw) {
  Frame frame(raw.points);
  int n = frame.size();
  if (raw.metric.size() != static_cast<std::size_t>(n))
    throw FormatError("metric row count does not match frame size");
  for (const auto& row : raw.metric)
    if (row.size() != static_cast<std::size_t>(n))
      throw FormatError("metric column count does not match frame size");
  if (raw.prob.size() != static_cast<std::size_t>(n))
    throw FormatError("probability vector does not match frame size");

  std::vector<Rat> cells;
  cells.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : raw.metric)
    for (const auto& v : row) cells.push_back(v);
  PseudoMetric metric(n, std::move(cells));

  for (int i = 0; i < n; ++i)
    if (!is_zero(metric.at(i, i)))
      throw AxiomViolation("PMet1", {frame.point(i)},
                           "d(" + frame.point(i) + ", " + frame.point(i) + ") = " +
                               rat_str(metric.at(i, i)) + " != 0");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (metric.at(i, j) != metric.at(j, i))
        throw AxiomViolation("PMet2", {frame.point(i), frame.point(j)},
                             "d(" + frame.point(i) + ", " + frame.point(j) +
                                 ") != d(" + frame.point(j) + ", " + frame.point(i) + ")");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rat& d = metric.at(i, j);
      if (is_negative(d) || d > 1)
        throw AxiomViolation("PMet4", {frame.point(i), frame.point(j)},
                             "d(" + frame.point(i) + ", " + frame.point(j) + ") = " +
                                 rat_str(d) + " outside [0, 1]");
    }

  bool crisp = true;
  for (int i = 0; crisp && i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!is_zero(metric.at(i, j)) && metric.at(i, j) != 1) {
        crisp = false;
        break;
      }
  if (crisp) {
    int x, y, z;
    if (!crisp_triangle_ok(metric, n, &x, &y, &z))
      throw AxiomViolation("PMet3", {frame.point(x), frame.point(y), frame.point(z)},
                           "d(" + frame.point(x) + ", " + frame.point(y) + ") + d(" +
                               frame.point(y) + ", " + frame.point(z) + ") < d(" +
                               frame.point(x) + ", " + frame.point(z) + ")");
  } else {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (x == y) continue;
        for (int z = 0; z < n; ++z)
          if (metric.at(x, y) + metric.at(y, z) < metric.at(x, z))
            throw AxiomViolation("PMet3", {frame.point(x), frame.point(y), frame.point(z)},
                                 "d(" + frame.point(x) + ", " + frame.point(y) + ") + d(" +
                                     frame.point(y) + ", " + frame.point(z) + ") < d(" +
                                     frame.point(x) + ", " + frame.point(z) + ")");
      }
  }

  Rat total = 0;
  for (int i = 0; i < n; ++i) {
    if (is_negative(raw.prob[i]))
      throw AxiomViolation("Prob1", {frame.point(i)},
                           "P(" + frame.point(i) + ") = " + rat_str(raw.prob[i]) + " < 0");
    total += raw.prob[i];
  }
  if (total != 1)
    throw AxiomViolation("Prob2", {}, "total probability " + rat_str(total) + " != 1");

  return MetricProbSpace(std::move(frame), std::move(metric), ProbabilityDist{raw.prob});
}

Rat set_distance(const MetricProbSpace& space, int x, const PointSet& set) {
  if (x < 0 || x >= space.size()) throw UnknownPoint("point index " + std::to_string(x));
  if (set.universe() != space.size())
    throw FormatError("point set universe does not match frame");
  if (set.contains(x)) return 0;
  bool found = false;
  Rat best;
  for (int y = 0; y < space.size(); ++y) {
    if (!set.contains(y)) continue;
    const Rat& d = space.dist(x, y);
    if (!found || d < best) {
      best = d;
      found = true;
      if (is_zero(best)) break;
    }
  }
  return found ? best : Rat(1);
}

Rat set_distance(const MetricProbSpace& space, const std::string& x,
                 const std::vector<std::string>& set) {
  return set_distance(space, space.frame().index_of(x), make_point_set(space.frame(), set));
}

Rat expectation(const MetricProbSpace& space, const std::vector<Rat>& pointwise) {
  if (pointwise.size() != static_cast<std::size_t>(space.size()))
    throw FormatError("pointwise table does not match frame");
  Rat sum = 0;
  for (int x = 0; x < space.size(); ++x)
    if (!is_zero(space.weight(x))) sum += pointwise[x] * space.weight(x);
  return sum;
}

Rat expected_distance(const MetricProbSpace& space, const PointSet& set) {
  if (set.universe() != space.size())
    throw FormatError("point set universe does not match frame");
  Rat sum = 0;
  for (int x = 0; x < space.size(); ++x) {
    if (is_zero(space.weight(x)) || set.contains(x)) continue;
    sum += set_distance(space, x, set) * space.weight(x);
  }
  return sum;
}

Rat expected_distance(const MetricProbSpace& space, const std::vector<std::string>& set) {
  return expected_distance(space, make_point_set(space.frame(), set));
}

MeasureQuad dual_measures(const MetricProbSpace& space, const PointSet& set) {
  Rat ed = expected_distance(space, set);
  Rat ea = expected_distance(space, set.complement());
  return MeasureQuad{ed, Rat(1 - ed), ea, Rat(1 - ea)};
}

MeasureQuad dual_measures(const MetricProbSpace& space, const std::vector<std::string>& set) {
  return dual_measures(space, make_point_set(space.frame(), set));
}

Rat set_to_set_distance(const MetricProbSpace& space, const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) return 1;
  bool found = false;
  Rat best;
  for (int x = 0; x < space.size(); ++x) {
    if (!a.contains(x)) continue;
    for (int y = 0; y < space.size(); ++y) {
      if (!b.contains(y)) continue;
      const Rat& d = space.dist(x, y);
      if (!found || d < best) {
        best = d;
        found = true;
      }
    }
  }
  return best;
}

}  // namespace edlogic
