#pragma once

#include <cstdint>

#include "pess/container_adjust.hpp"
#include "pess/sed.hpp"

namespace pess {

struct SolveConfig {
  std::size_t n = 1;
  double t_cut_seconds = 60.0;  // wall-clock budget
  SedSettings sed;
  PenaltySchedule schedule;
  OptimizerSettings opt;
  std::uint64_t seed = 0;
  double init_density = 0.6;       // lower-bound radius estimate density
  double radius_shrink_step = 0.0; // 0 = search at exactly R*
  // Deterministic stopping aids; 0 disables either. stall_limit stops after
  // that many consecutive outer iterations without improving R*.
  int stall_limit = 0;
  long max_outer_iters = 0;
};

struct SolveResult {
  Solution best;
  double best_radius = 0.0;
  long iterations = 0;  // outer-loop passes after initialization
  double elapsed_s = 0.0;
  double time_to_best_s = 0.0;
  std::uint64_t seed = 0;
  bool feasible = false;
};

// SED at the density-estimated lower-bound radius, then container adjustment.
// Retries once with a reseeded stream if adjustment ends infeasible; throws
// std::runtime_error if the retry also fails.
Solution initialize(std::size_t n, const SolveConfig& config, RngStream& rng);

// Outer loop: repeatedly re-search at the incumbent radius and adjust, keeping
// the best feasible solution until the budget expires.
SolveResult solve(const SolveConfig& config);

}  // namespace pess
