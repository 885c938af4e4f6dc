#include "edlogic/evidence.hpp"

#include <algorithm>
#include <string>

namespace edlogic {

namespace {

std::string mask_str(const Frame& frame, SubsetMask mask) {
  std::string out;
  for (int i = 0; i < frame.size(); ++i)
    if ((mask >> i) & 1) {
      if (!out.empty()) out += ",";
      out += frame.point(i);
    }
  return out;
}

void check_table_frame(const Frame& frame, std::size_t table_size) {
  if (frame.size() > kDefaultPowersetPointCap)
    throw FrameTooLarge("powerset table over " + std::to_string(frame.size()) + " points");
  if (table_size != (std::size_t{1} << frame.size()))
    throw FormatError("table must cover all 2^n subsets");
}

}  // namespace

SetFunction::SetFunction(Frame frame, std::vector<Rat> values)
    : frame_(std::move(frame)), values_(std::move(values)) {
  check_table_frame(frame_, values_.size());
}

MassFunction::MassFunction(Frame frame, std::vector<Rat> mass)
    : frame_(std::move(frame)), mass_(std::move(mass)) {
  check_table_frame(frame_, mass_.size());
  if (!is_zero(mass_[0])) throw InvalidMass("m(empty) = " + rat_str(mass_[0]) + " != 0");
  Rat total = 0;
  for (SubsetMask s = 0; s < mass_.size(); ++s) {
    if (is_negative(mass_[s]))
      throw InvalidMass("m({" + mask_str(frame_, s) + "}) = " + rat_str(mass_[s]) + " < 0");
    total += mass_[s];
  }
  if (total != 1) throw InvalidMass("total mass " + rat_str(total) + " != 1");
}

Rat alternating_max(const std::vector<Rat>& values) {
  if (values.empty()) throw EmptyInput("alternating_max needs at least one value");
  int n = static_cast<int>(values.size());
  Rat sum = 0;
  for (std::uint32_t subset = 1; subset < (std::uint32_t{1} << n); ++subset) {
    Rat m = values[__builtin_ctz(subset)];
    for (int i = 0; i < n; ++i)
      if ((subset >> i) & 1 && values[i] < m) m = values[i];
    if (__builtin_popcount(subset) % 2)
      sum += m;
    else
      sum -= m;
  }
  return sum;
}

Rat alternating_min(const std::vector<Rat>& values) {
  if (values.empty()) throw EmptyInput("alternating_min needs at least one value");
  int n = static_cast<int>(values.size());
  Rat sum = 0;
  for (std::uint32_t subset = 1; subset < (std::uint32_t{1} << n); ++subset) {
    Rat m = values[__builtin_ctz(subset)];
    for (int i = 0; i < n; ++i)
      if ((subset >> i) & 1 && values[i] > m) m = values[i];
    if (__builtin_popcount(subset) % 2)
      sum += m;
    else
      sum -= m;
  }
  return sum;
}

Rat alternating_max_multiplicative(const std::vector<Rat>& values) {
  if (values.empty()) throw EmptyInput("alternating_max_multiplicative needs at least one value");
  for (const Rat& v : values)
    if (!is_positive(v))
      throw NonPositiveInput("multiplicative form needs positive values, got " + rat_str(v));
  int n = static_cast<int>(values.size());
  Rat prod = 1;
  for (std::uint32_t subset = 1; subset < (std::uint32_t{1} << n); ++subset) {
    Rat m = values[__builtin_ctz(subset)];
    for (int i = 0; i < n; ++i)
      if ((subset >> i) & 1 && values[i] < m) m = values[i];
    if (__builtin_popcount(subset) % 2)
      prod *= m;
    else
      prod /= m;
  }
  return prod;
}

SetFunction belief_from_mass(const MassFunction& m) {
  SubsetMask full = m.full_mask();
  std::vector<Rat> bel(std::size_t{full} + 1, Rat(0));
  for (SubsetMask a = 0; a <= full; ++a) {
    Rat sum = 0;
    // enumerate submasks of a (including empty)
    SubsetMask u = a;
    while (true) {
      sum += m.at(u);
      if (u == 0) break;
      u = (u - 1) & a;
    }
    bel[a] = sum;
  }
  return SetFunction(m.frame(), std::move(bel));
}

SetFunction doubt_from_mass(const MassFunction& m) {
  SetFunction bel = belief_from_mass(m);
  SubsetMask full = m.full_mask();
  std::vector<Rat> doubt(std::size_t{full} + 1);
  for (SubsetMask a = 0; a <= full; ++a) doubt[a] = bel.at(full & ~a);
  return SetFunction(m.frame(), std::move(doubt));
}

SetFunction plausibility_from_mass(const MassFunction& m) {
  SetFunction doubt = doubt_from_mass(m);
  SubsetMask full = m.full_mask();
  std::vector<Rat> pl(std::size_t{full} + 1);
  for (SubsetMask a = 0; a <= full; ++a) pl[a] = 1 - doubt.at(a);
  return SetFunction(m.frame(), std::move(pl));
}

MassFunction mass_from_doubt(const SetFunction& sf) {
  SubsetMask full = sf.full_mask();
  std::vector<Rat> mass(std::size_t{full} + 1, Rat(0));
  for (SubsetMask a = 0; a <= full; ++a) {
    Rat m = 0;
    SubsetMask u = a;
    while (true) {
      // (-1)^(|a| - |u|) * sf(u^c)
      int parity = (__builtin_popcount(a) - __builtin_popcount(u)) % 2;
      if (parity)
        m -= sf.at(full & ~u);
      else
        m += sf.at(full & ~u);
      if (u == 0) break;
      u = (u - 1) & a;
    }
    mass[a] = m;
  }
  if (!is_zero(mass[0]))
    throw NotADoubtFunction("", rat_str(mass[0]), "Moebius mass of empty set is nonzero");
  Rat total = 0;
  for (SubsetMask a = 0; a <= full; ++a) {
    if (is_negative(mass[a]))
      throw NotADoubtFunction(mask_str(sf.frame(), a), rat_str(mass[a]),
                              "negative Moebius mass");
    total += mass[a];
  }
  if (total != 1)
    throw NotADoubtFunction(mask_str(sf.frame(), full), rat_str(total),
                            "Moebius masses sum to " + rat_str(total) + ", not 1");
  return MassFunction(sf.frame(), std::move(mass));
}

bool is_doubt_function(const SetFunction& sf) {
  if (sf.at(0) != 1) return false;
  if (!is_zero(sf.at(sf.full_mask()))) return false;
  try {
    mass_from_doubt(sf);
  } catch (const NotADoubtFunction&) {
    return false;
  }
  return true;
}

SetFunction ed_set_function(const MetricProbSpace& space, int max_points) {
  int n = space.size();
  if (n > max_points || n > kDefaultPowersetPointCap)
    throw FrameTooLarge("ed table over " + std::to_string(n) + " points (cap " +
                        std::to_string(std::min(max_points, kDefaultPowersetPointCap)) + ")");
  std::vector<Rat> table(std::size_t{1} << n);
  for (SubsetMask s = 0; s < table.size(); ++s)
    table[s] = expected_distance(space, mask_to_point_set(space.frame(), s));
  return SetFunction(space.frame(), std::move(table));
}

PointSet mask_to_point_set(const Frame& frame, SubsetMask mask) {
  PointSet set(frame.size());
  for (int i = 0; i < frame.size(); ++i)
    if ((mask >> i) & 1) set.add(i);
  return set;
}

}  // namespace edlogic
