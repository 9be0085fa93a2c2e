#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pess/types.hpp"

namespace pess {

// Per-sphere neighbor sets under a center-distance cutoff. Lists are kept
// sorted ascending so structural comparison is a plain lexicographic check.
// Immutable after build; safe to share read-only.
struct NeighborIndex {
  std::vector<std::vector<std::uint32_t>> lists;
  double cutoff = 0.0;
  std::size_t built_for_n = 0;
};

// j is a neighbor of i iff |c_i - c_j| < cutoff (strict). Built with a sweep
// over the x-sorted order, so typical cost is sub-quadratic; the result is
// identical to the O(n^2) definition.
NeighborIndex build_neighbors(std::span<const double> coords, double cutoff);
NeighborIndex build_neighbors(const Layout& layout, double cutoff);

// Element-wise equality of all lists. Throws std::invalid_argument when the
// two indexes were built for different sphere counts.
bool same_structure(const NeighborIndex& a, const NeighborIndex& b);

// Neighbor-restricted evaluation. Equals the brute-force path as long as no
// pair outside the index has center distance < 2; keeping that guarantee is
// the ANM policy's job.
struct NeighborEval {
  double value = 0.0;
  double max_pair = 0.0;
  double max_container = 0.0;
  double d_value_d_radius = 0.0;
};
NeighborEval neighbor_eval(std::span<const double> coords, double radius,
                           const NeighborIndex& idx, std::span<double> grad);

EnergyReport energy_with_neighbors(const Solution& s, const NeighborIndex& idx);
std::vector<double> gradient_with_neighbors(const Solution& s,
                                            const NeighborIndex& idx);

}  // namespace pess
