#include <cmath>

#include "pess/kernels.hpp"

namespace pess::kernels {

namespace {

// Kahan accumulator; keeps the energy sum reproducible to a couple of ulp so
// the neighbor-path and brute-force totals can be compared at 1e-12.
struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    double y = v - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

PairResult pair_eval_scalar(const double* xs, const double* ys,
                            const double* zs, std::size_t n,
                            double* gx, double* gy, double* gz) {
  PairResult r;
  Kahan acc;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = xs[i], yi = ys[i], zi = zs[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = xi - xs[j];
      const double dy = yi - ys[j];
      const double dz = zi - zs[j];
      const double l2 = dx * dx + dy * dy + dz * dz;
      if (l2 >= 4.0) continue;
      const double l = std::sqrt(l2);
      const double o = 2.0 - l;
      acc.add(o * o);
      if (o > r.max_overlap) r.max_overlap = o;
      if (gx != nullptr) {
        if (l < kSingularEps) {
          // coincident centers: push apart along +x
          gx[i] -= 2.0 * o;
          gx[j] += 2.0 * o;
        } else {
          const double f = 2.0 * o / l;
          gx[i] -= f * dx;
          gy[i] -= f * dy;
          gz[i] -= f * dz;
          gx[j] += f * dx;
          gy[j] += f * dy;
          gz[j] += f * dz;
        }
      }
    }
  }
  r.energy = acc.sum;
  return r;
}

WallResult wall_eval_scalar(const double* xs, const double* ys,
                            const double* zs, std::size_t n, double radius,
                            double* gx, double* gy, double* gz) {
  WallResult r;
  Kahan acc;
  Kahan dr;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = xs[i], y = ys[i], z = zs[i];
    const double nrm = std::sqrt(x * x + y * y + z * z);
    const double o = nrm + 1.0 - radius;
    if (o <= 0.0) continue;
    acc.add(o * o);
    dr.add(-2.0 * o);
    if (o > r.max_overlap) r.max_overlap = o;
    if (gx != nullptr) {
      if (nrm < kSingularEps) {
        // kink of |c| at the origin: every direction increases the overlap,
        // so zero is the only subgradient a line search can make progress on
      } else {
        const double f = 2.0 * o / nrm;
        gx[i] += f * x;
        gy[i] += f * y;
        gz[i] += f * z;
      }
    }
  }
  r.energy = acc.sum;
  r.d_energy_d_radius = dr.sum;
  return r;
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet set{pair_eval_scalar, wall_eval_scalar, "scalar"};
  return set;
}

}  // namespace pess::kernels
