#pragma once

// Finite metric probability spaces and the expected-distance measure.
//
// A space couples a frame with a 1-bounded pseudometric (zero diagonal,
// symmetric, triangle inequality, values in [0,1]) and a probability mass
// per point. Distinct points at distance zero are legal, as are points of
// probability zero. Everything is immutable after construction.

#include <string>
#include <vector>

#include "edlogic/errors.hpp"
#include "edlogic/frame.hpp"
#include "edlogic/rational.hpp"

namespace edlogic {

// Square matrix of exact rationals indexed by frame points.
class PseudoMetric {
 public:
  PseudoMetric() = default;
  PseudoMetric(int n, std::vector<Rat> cells);  // row-major, n*n cells

  int size() const { return n_; }
  const Rat& at(int i, int j) const { return cells_[static_cast<std::size_t>(i) * n_ + j]; }

 private:
  int n_ = 0;
  std::vector<Rat> cells_;
};

struct ProbabilityDist {
  std::vector<Rat> weight;  // aligned with frame points
};

// Unvalidated space data as read from a file or built by hand.
struct RawSpace {
  std::vector<std::string> points;
  std::vector<std::vector<Rat>> metric;
  std::vector<Rat> prob;
};

class MetricProbSpace {
 public:
  const Frame& frame() const { return frame_; }
  const PseudoMetric& metric() const { return metric_; }
  const ProbabilityDist& prob() const { return prob_; }

  int size() const { return frame_.size(); }
  const Rat& dist(int i, int j) const { return metric_.at(i, j); }
  const Rat& weight(int i) const { return prob_.weight[static_cast<std::size_t>(i)]; }

 private:
  friend MetricProbSpace validate_space(const RawSpace&);
  MetricProbSpace(Frame f, PseudoMetric m, ProbabilityDist p);

  Frame frame_;
  PseudoMetric metric_;
  ProbabilityDist prob_;
};

// The expected distance of a set together with its three dual measures:
// es = 1 - ed (expected similarity), ea = ed of the complement (expected
// absoluteness), er = 1 - ea (expected relativeness).
struct MeasureQuad {
  Rat ed, es, ea, er;
};

// Checks PMet1-4 and Prob1-2 and returns the validated space. Throws
// AxiomViolation naming the first violated axiom and the offending points;
// FormatError on dimension mismatches or a malformed frame.
MetricProbSpace validate_space(const RawSpace& raw);

// d(x, U) = min over y in U of d(x, y); 1 when U is empty.
Rat set_distance(const MetricProbSpace& space, int x, const PointSet& set);
Rat set_distance(const MetricProbSpace& space, const std::string& x,
                 const std::vector<std::string>& set);

// Probability-weighted mean of a per-point table: sum f(x) P(x).
Rat expectation(const MetricProbSpace& space, const std::vector<Rat>& pointwise);

// ed(U) = sum over x of d(x, U) P(x). ed(empty) = 1, ed(frame) = 0.
Rat expected_distance(const MetricProbSpace& space, const PointSet& set);
Rat expected_distance(const MetricProbSpace& space, const std::vector<std::string>& set);

MeasureQuad dual_measures(const MetricProbSpace& space, const PointSet& set);
MeasureQuad dual_measures(const MetricProbSpace& space, const std::vector<std::string>& set);

// Minimum distance between two point sets; 1 if either is empty.
Rat set_to_set_distance(const MetricProbSpace& space, const PointSet& a, const PointSet& b);

}  // namespace edlogic
