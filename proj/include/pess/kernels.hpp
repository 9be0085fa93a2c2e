#pragma once

#include <cstddef>

// Dense pairwise / wall evaluation kernels. Scalar reference versions plus an
// AVX2 variant selected at runtime; the two are equivalence-tested against
// each other. Coordinates are passed in SoA form (xs, ys, zs, each length n).
// Gradient pointers may be null; when present the kernels *accumulate* into
// them, so the caller zeroes the buffers first.
namespace pess::kernels {

// Below this separation an active overlap direction is undefined; the kernels
// substitute a fixed +x pseudo-direction so no NaN can escape.
inline constexpr double kSingularEps = 1e-12;

struct PairResult {
  double energy = 0.0;       // sum of O_ij^2 over i < j
  double max_overlap = 0.0;  // largest O_ij
};

struct WallResult {
  double energy = 0.0;              // sum of O_i0^2
  double max_overlap = 0.0;         // largest O_i0
  double d_energy_d_radius = 0.0;   // sum of -2 * O_i0
};

using PairEvalFn = PairResult (*)(const double* xs, const double* ys,
                                  const double* zs, std::size_t n,
                                  double* gx, double* gy, double* gz);
using WallEvalFn = WallResult (*)(const double* xs, const double* ys,
                                  const double* zs, std::size_t n,
                                  double radius,
                                  double* gx, double* gy, double* gz);

struct KernelSet {
  PairEvalFn pair_eval;
  WallEvalFn wall_eval;
  const char* name;
};

const KernelSet& scalar_kernels();

// Null when the CPU (or build) lacks AVX2.
const KernelSet* avx2_kernels();

// AVX2 when available; override with PESS_KERNEL=scalar|avx2 in the
// environment. The choice is made once per process.
const KernelSet& active_kernels();

}  // namespace pess::kernels
