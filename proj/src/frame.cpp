#include "edlogic/frame.hpp"

namespace edlogic {

Frame::Frame(std::vector<std::string> points) : points_(std::move(points)) {
  if (points_.empty()) throw FormatError("frame must be non-empty");
  for (int i = 0; i < size(); ++i) {
    if (points_[i].empty()) throw FormatError("empty point identifier");
    if (!index_.emplace(points_[i], i).second)
      throw FormatError("duplicate point identifier '" + points_[i] + "'");
  }
}

int Frame::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw UnknownPoint(name);
  return it->second;
}

PointSet make_point_set(const Frame& frame, const std::vector<std::string>& names) {
  PointSet s(frame.size());
  for (const auto& name : names) s.add(frame.index_of(name));
  return s;
}

}  // namespace edlogic
