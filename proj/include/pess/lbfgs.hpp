#pragma once

#include <deque>
#include <functional>
#include <span>
#include <vector>

#include "pess/objective.hpp"

namespace pess {

struct OptimizerSettings {
  int max_iter = 10000;
  double grad_tol = 1e-12;
  int memory = 7;           // L-BFGS history pairs
  double cutoff = 4.0;      // neighbor-build distance
  int len_reset = 1;        // deferring-length reset value
  double len_factor = 2.0;  // deferring-length growth factor

  // Baseline policy for the maintenance comparison: reconstruct the neighbor
  // structure every iteration and count each reconstruction.
  bool rebuild_every_iter = false;
};

struct OptimizeReport {
  long iterations = 0;
  long rebuilds = 0;            // reconstructions that replaced the structure
  long maintenance_checks = 0;  // times the check block ran
  double final_value = 0.0;
  double final_grad_norm = 0.0;
  bool converged = false;
  std::vector<double> len_trace;   // len observed at each maintenance check
  std::vector<char> rebuild_trace; // whether that check replaced the structure

  double deferring_ratio() const {
    if (iterations <= 0) return 0.0;
    return 1.0 - static_cast<double>(rebuilds) / static_cast<double>(iterations);
  }
};

// Test instrumentation hook, invoked after each completed iteration.
struct IterationInfo {
  long iteration;
  std::span<const double> x;
  double value;
  double grad_norm;
  const NeighborIndex* index;
  double max_displacement_since_rebuild;
};

// Curvature history for the two-loop recursion. Pairs failing the curvature
// condition are skipped at insertion, keeping the implicit Hessian SPD.
class LbfgsHistory {
 public:
  explicit LbfgsHistory(int memory) : memory_(memory) {}

  void push(std::vector<double> s, std::vector<double> y);
  void clear() { pairs_.clear(); }
  bool empty() const { return pairs_.empty(); }
  double initial_scaling() const;  // s.y / y.y of the latest pair, else 1

  struct Pair {
    std::vector<double> s, y;
    double rho;  // 1 / (s.y)
  };
  const std::deque<Pair>& pairs() const { return pairs_; }

 private:
  int memory_;
  std::deque<Pair> pairs_;
};

// d = -H g via the standard two-loop recursion.
void two_loop_recursion(const LbfgsHistory& history, std::span<const double> g,
                        std::span<double> d);

struct LineSearchResult {
  double alpha = 0.0;
  double value = 0.0;
  bool success = false;  // strong Wolfe satisfied
};

// Strong Wolfe line search (c1 = 1e-4, c2 = 0.9, cubic-interpolation zoom).
// On exit x_out/g_out hold the point at the returned alpha. When the Wolfe
// conditions could not be met within the iteration bounds, success is false
// and the best point found is returned.
LineSearchResult line_search(Objective& f, const NeighborIndex* idx,
                             std::span<const double> x, std::span<const double> d,
                             double f0, std::span<const double> g0,
                             std::span<double> x_out, std::span<double> g_out);

struct MinimizeResult {
  std::vector<double> x;
  OptimizeReport report;
};

// L-BFGS with adaptive neighbor maintenance: the neighbor structure is only
// reconstructed when the deferring counter reaches the deferring length,
// which doubles while the structure stays stable and resets when it changes.
// Throws std::runtime_error on non-finite objective values.
MinimizeResult minimize(
    Objective& f, std::vector<double> x0, const OptimizerSettings& settings,
    const std::function<void(const IterationInfo&)>& observer = nullptr);

}  // namespace pess
