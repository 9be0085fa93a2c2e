#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace pess {

using Point3 = std::array<double, 3>;

// Sphere centers stored as a flat [x1, y1, z1, x2, y2, z2, ...] vector.
// All lengths are in units of the unit-sphere radius.
struct Layout {
  std::vector<double> coords;

  Layout() = default;
  explicit Layout(std::size_t n) : coords(3 * n, 0.0) {}
  explicit Layout(std::vector<double> flat) : coords(std::move(flat)) {}

  std::size_t sphere_count() const { return coords.size() / 3; }

  Point3 center(std::size_t i) const {
    return {coords[3 * i], coords[3 * i + 1], coords[3 * i + 2]};
  }
  void set_center(std::size_t i, const Point3& p) {
    coords[3 * i] = p[0];
    coords[3 * i + 1] = p[1];
    coords[3 * i + 2] = p[2];
  }
};

// A layout together with the container radius it is evaluated against.
struct Solution {
  Layout layout;
  double radius = 0.0;
};

struct EnergyReport {
  double total = 0.0;
  double max_pair_overlap = 0.0;
  double max_container_overlap = 0.0;
};

}  // namespace pess
