#pragma once

#include "pess/geometry.hpp"
#include "pess/lbfgs.hpp"

namespace pess {

struct PenaltySchedule {
  double lambda0 = 1e-4;
  double factor = 0.5;
  int rounds = 35;
};

// Acceptance tolerance for the geometric feasibility of adjusted solutions.
inline constexpr double kAdjustFeasibilityTol = 1e-7;

struct AdjustResult {
  Solution solution;
  bool feasible = false;
  FeasibilityReport report;
  double final_lambda = 0.0;         // lambda after the schedule completed
  std::vector<double> lambdas_used;  // one per minimization round
};

// Penalty continuation: minimize U = E + lambda * R^2 over centers and radius
// while lambda decays geometrically, expanding or shrinking the container
// toward a feasible local-minimum radius. An infeasible final configuration
// is returned flagged, never silently.
AdjustResult adjust_container(const Solution& s, const PenaltySchedule& schedule,
                              const OptimizerSettings& opt);

}  // namespace pess
