#pragma once

// Evidence calculus over a finite frame: set functions on the full powerset,
// mass functions, belief/doubt/plausibility, and Moebius inversion between
// doubt functions and mass functions.
//
// Subsets are encoded as bitmasks over frame point indices; a table holds
// one value per mask. Frames are capped (default 16 points) because tables
// are dense over the powerset.

#include <cstdint>
#include <vector>

#include "edlogic/frame.hpp"
#include "edlogic/rational.hpp"
#include "edlogic/space.hpp"

namespace edlogic {

using SubsetMask = std::uint32_t;

inline constexpr int kDefaultPowersetPointCap = 16;

// A total map from every subset of the frame to a rational.
class SetFunction {
 public:
  SetFunction(Frame frame, std::vector<Rat> values);  // values.size() == 2^|frame|

  const Frame& frame() const { return frame_; }
  int n() const { return frame_.size(); }
  SubsetMask full_mask() const { return (SubsetMask{1} << n()) - 1; }
  std::size_t table_size() const { return values_.size(); }

  const Rat& at(SubsetMask subset) const { return values_[subset]; }
  const std::vector<Rat>& values() const { return values_; }

 private:
  Frame frame_;
  std::vector<Rat> values_;
};

// A set function with m(empty) = 0, m >= 0 everywhere, total mass 1.
class MassFunction {
 public:
  MassFunction(Frame frame, std::vector<Rat> mass);  // throws InvalidMass

  const Frame& frame() const { return frame_; }
  int n() const { return frame_.size(); }
  SubsetMask full_mask() const { return (SubsetMask{1} << n()) - 1; }

  const Rat& at(SubsetMask subset) const { return mass_[subset]; }
  const std::vector<Rat>& values() const { return mass_; }

 private:
  Frame frame_;
  std::vector<Rat> mass_;
};

// Inclusion-exclusion over subset minima in the additive group (Q, +):
// sum over nonempty I of (-1)^(|I|+1) min_{i in I} v_i. Equals max(v).
Rat alternating_max(const std::vector<Rat>& values);

// Dual form with subset maxima; equals min(v).
Rat alternating_min(const std::vector<Rat>& values);

// Same identity in the multiplicative group (Q_{>0}, *): the product over
// nonempty I of (min_I v)^(+-1). Equals max(v). Inputs must be positive.
Rat alternating_max_multiplicative(const std::vector<Rat>& values);

// Bel(A) = sum of m(U) over U subseteq A.
SetFunction belief_from_mass(const MassFunction& m);
// Doubt(A) = Bel(A^c).
SetFunction doubt_from_mass(const MassFunction& m);
// Pl(A) = 1 - Doubt(A).
SetFunction plausibility_from_mass(const MassFunction& m);

// Moebius inversion: m(A) = sum over U subseteq A of (-1)^(|A|-|U|) sf(U^c).
// Throws NotADoubtFunction if the result is not a valid mass function,
// naming the first offending subset.
MassFunction mass_from_doubt(const SetFunction& sf);

// True iff sf(empty) = 1, sf(frame) = 0, and the Moebius masses are a valid
// mass function. Equivalent to the superadditivity inequality family, at
// O(3^n) instead of doubly exponential cost.
bool is_doubt_function(const SetFunction& sf);

// Tabulates ed over the full powerset of the space's frame.
// Throws FrameTooLarge above the cap.
SetFunction ed_set_function(const MetricProbSpace& space,
                            int max_points = kDefaultPowersetPointCap);

// PointSet view of a bitmask subset (bit i <-> frame point i).
PointSet mask_to_point_set(const Frame& frame, SubsetMask mask);

}  // namespace edlogic
