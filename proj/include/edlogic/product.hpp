#pragma once

// Product spaces under the probabilistic-sum metric
// lambda(d_1..d_n) = 1 - prod(1 - d_i), with either the independent product
// probability or an explicit joint table over tuples.

#include <optional>
#include <string>
#include <vector>

#include "edlogic/frame.hpp"
#include "edlogic/rational.hpp"
#include "edlogic/space.hpp"

namespace edlogic {

inline constexpr long kDefaultProductTupleCap = 4096;

// 1 - prod(1 - d_i). Each input must lie in [0,1]; so does the result.
Rat lambda_combine(const std::vector<Rat>& distances);

// A product of component spaces. Tuples are indexed in odometer order with
// the last component varying fastest; tuple names join component point names
// with '|'. Tuple distances are computed on demand.
class ProductSpace {
 public:
  // With no joint, builds the independent product probability.
  // Throws FrameTooLarge over the tuple cap, InvalidJoint on a bad table.
  static ProductSpace build(std::vector<MetricProbSpace> components,
                            std::optional<std::vector<Rat>> joint = std::nullopt,
                            long max_tuples = kDefaultProductTupleCap);

  int arity() const { return static_cast<int>(components_.size()); }
  const std::vector<MetricProbSpace>& components() const { return components_; }
  const MetricProbSpace& component(int i) const;

  long tuple_count() const { return static_cast<long>(joint_.size()); }
  std::vector<int> tuple_of(long index) const;
  long index_of(const std::vector<int>& tuple) const;
  std::string tuple_name(long index) const;

  const Rat& joint_prob(long index) const { return joint_[static_cast<std::size_t>(index)]; }
  Rat tuple_distance(long a, long b) const;

  // ed over the product frame under the joint probability.
  Rat ed(const PointSet& tuples) const;

  // The event "component i falls in A": Omega x ... x A x ... x Omega.
  PointSet cylinder(int component, const PointSet& a) const;

  // Materializes the product as a standard space (dense metric).
  MetricProbSpace expand() const;

 private:
  ProductSpace() = default;

  std::vector<MetricProbSpace> components_;
  std::vector<Rat> joint_;
  std::vector<long> strides_;
};

// Distance from a tuple to a rectangle prod A_i, computed two ways - the
// per-component product formula and the direct minimum over the rectangle -
// compared exactly, then returned. Throws EmptyComponentSet if any A_i is
// empty (the product formula presumes per-component distances).
Rat product_set_distance(const ProductSpace& ps, const std::vector<int>& x,
                         const std::vector<PointSet>& rects);

// Minimum tuple distance between two rectangles, by brute force.
Rat rectangle_distance(const ProductSpace& ps, const std::vector<PointSet>& a,
                       const std::vector<PointSet>& b);

// Events are cylinders A_i over the named components. True iff for every
// sub-collection S: 1 - ed(intersection of the S-cylinders) equals
// prod over S of (1 - ed(cylinder_i)), exactly.
bool independent_relative_to_ed(const ProductSpace& ps,
                                const std::vector<std::pair<int, PointSet>>& events);

}  // namespace edlogic
