#pragma once

// Point frames and subsets of a frame.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "edlogic/errors.hpp"

namespace edlogic {

// The finite set of points underlying a space. Point order is significant:
// it fixes matrix indexing and the bit positions of subset masks.
class Frame {
 public:
  Frame() = default;
  explicit Frame(std::vector<std::string> points);

  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& point(int i) const { return points_[static_cast<std::size_t>(i)]; }

  // Throws UnknownPoint.
  int index_of(const std::string& name) const;
  bool has(const std::string& name) const { return index_.count(name) != 0; }

  bool operator==(const Frame& other) const { return points_ == other.points_; }

 private:
  std::vector<std::string> points_;
  std::unordered_map<std::string, int> index_;
};

// A subset of a frame, as a bitset over point indices.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(int universe) : universe_(universe), bits_((universe + 63) / 64, 0) {}

  static PointSet full(int universe) {
    PointSet s(universe);
    for (int i = 0; i < universe; ++i) s.add(i);
    return s;
  }

  int universe() const { return universe_; }
  bool contains(int i) const { return (bits_[i >> 6] >> (i & 63)) & 1u; }
  void add(int i) { bits_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void remove(int i) { bits_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  bool empty() const {
    for (auto w : bits_)
      if (w) return false;
    return true;
  }

  int count() const {
    int c = 0;
    for (auto w : bits_) c += __builtin_popcountll(w);
    return c;
  }

  PointSet complement() const {
    PointSet r(universe_);
    for (std::size_t w = 0; w < bits_.size(); ++w) r.bits_[w] = ~bits_[w];
    r.trim();
    return r;
  }

  PointSet unite(const PointSet& o) const {
    PointSet r(universe_);
    for (std::size_t w = 0; w < bits_.size(); ++w) r.bits_[w] = bits_[w] | o.bits_[w];
    return r;
  }

  PointSet intersect(const PointSet& o) const {
    PointSet r(universe_);
    for (std::size_t w = 0; w < bits_.size(); ++w) r.bits_[w] = bits_[w] & o.bits_[w];
    return r;
  }

  bool subset_of(const PointSet& o) const {
    for (std::size_t w = 0; w < bits_.size(); ++w)
      if (bits_[w] & ~o.bits_[w]) return false;
    return true;
  }

  bool operator==(const PointSet& o) const {
    return universe_ == o.universe_ && bits_ == o.bits_;
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (int i = 0; i < universe_; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

 private:
  void trim() {
    if (bits_.empty()) return;
    int rem = universe_ & 63;
    if (rem) bits_.back() &= (std::uint64_t{1} << rem) - 1;
  }

  int universe_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Builds a PointSet from point names. Throws UnknownPoint.
PointSet make_point_set(const Frame& frame, const std::vector<std::string>& names);

}  // namespace edlogic
