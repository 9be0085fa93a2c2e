#pragma once

#include <span>
#include <vector>

#include "pess/types.hpp"

namespace pess {

// Overlap depth of two unit spheres: max(0, 2 - |a - b|).
double pair_overlap(const Point3& a, const Point3& b);

// Overlap depth of a unit sphere against the container wall:
// max(0, |a| + 1 - radius).
double container_overlap(const Point3& a, double radius);

// O(n^2) evaluation of the elastic energy and its analytic gradient, routed
// through the dispatched dense kernels. This is the reference path; the
// neighbor-accelerated path in neighbor.hpp must agree with it.
//
// Gradient sign convention: returns dE/dx, so a descent step is x - a*g.
struct BruteEval {
  double value = 0.0;
  double max_pair = 0.0;
  double max_container = 0.0;
  double d_value_d_radius = 0.0;  // derivative of the wall sum w.r.t. R
};
// grad may be empty (no gradient) or size coords.size(); it is overwritten.
BruteEval brute_eval(std::span<const double> coords, double radius,
                     std::span<double> grad);

EnergyReport energy(const Solution& s);
std::vector<double> energy_gradient(const Solution& s);

// n * r^3 / R^3 with r = 1.
double density(const Solution& s);

struct PairViolation {
  std::size_t i = 0, j = 0;
  double amount = 0.0;  // 2 - distance
};
struct WallViolation {
  std::size_t i = 0;
  double amount = 0.0;  // |c_i| + 1 - R
};
struct FeasibilityReport {
  bool feasible = true;
  std::vector<PairViolation> pair_violations;
  std::vector<WallViolation> wall_violations;
};

// Geometric feasibility: all pair distances >= 2 - geom_tol and every
// |c_i| + 1 <= R + geom_tol.
FeasibilityReport check_feasible(const Solution& s, double geom_tol);

}  // namespace pess
