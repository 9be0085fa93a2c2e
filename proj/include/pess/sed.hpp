#pragma once

#include <chrono>
#include <optional>

#include "pess/lbfgs.hpp"
#include "pess/rng.hpp"
#include "pess/types.hpp"

namespace pess {

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

struct SedSettings {
  int s_iter = 700;                 // maximum heuristic iterations
  double c = 7.0;                   // exploration coefficient
  double theta = 0.8;               // perturbation half-width
  double feasible_energy = 1e-25;   // feasibility break threshold
  int exploration_cap = 600;        // upper bound on a candidate round
};

// m = max(1, ceil(-c * log2(e))), clamped to cap. Nonpositive energies map to
// the cap (the feasibility break fires before this can matter).
int exploration_count(double e, double c, int cap = 600);

// Independent uniform(-theta, theta) shift on every coordinate.
Layout perturb(const Layout& layout, double theta, RngStream& rng);

// n centers uniform in the ball of radius max(R - 1, 0).
Layout random_layout(std::size_t n, double R, RngStream& rng);

struct Candidate {
  Layout layout;
  double energy;
};

// argmin when some candidate beats the current energy (ties to the lowest
// index); otherwise softmax sampling over exp(J), stabilized by max
// subtraction.
std::size_t select_index(double current_energy,
                         std::span<const Candidate> candidates, double c,
                         int cap, RngStream& rng);

struct SedIterationLog {
  double current_energy;  // energy of the operated solution entering the round
  int m;                  // candidates generated this round
  double best_energy;     // best energy after the round
};

struct SedResult {
  Layout layout;
  double energy = 0.0;
  bool feasible = false;        // energy <= feasible_energy
  bool deadline_hit = false;
  long iterations = 0;
  std::vector<SedIterationLog> trace;
};

// Fixed-radius feasibility search: random layout, minimize, then repeated
// perturb / minimize / select rounds with an energy-quantified exploration
// budget. Honors the deadline between candidate minimizations.
SedResult sed(std::size_t n, double R, const SedSettings& settings,
              const OptimizerSettings& opt, RngStream& rng,
              const Deadline& deadline = std::nullopt);

}  // namespace pess
