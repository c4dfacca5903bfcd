#pragma once

#include <utility>
#include <vector>

namespace wqcm {

struct Point {
  std::vector<double> coords;

  Point() = default;
  explicit Point(std::vector<double> c) : coords(std::move(c)) {}

  int dim() const { return static_cast<int>(coords.size()); }
  double operator[](int i) const { return coords[i]; }

  friend bool operator==(const Point&, const Point&) = default;
};

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

using DomainBox = std::vector<Interval>;

inline bool contains(const DomainBox& box, const Point& p) {
  if (static_cast<int>(box.size()) != p.dim()) return false;
  for (int i = 0; i < p.dim(); ++i) {
    if (p[i] < box[i].lo || p[i] > box[i].hi) return false;
  }
  return true;
}

}  // namespace wqcm
