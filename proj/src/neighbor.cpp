#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pess/kernels.hpp"
#include "pess/neighbor.hpp"

namespace pess {

NeighborIndex build_neighbors(std::span<const double> coords, double cutoff) {
  const std::size_t n = coords.size() / 3;
  NeighborIndex idx;
  idx.cutoff = cutoff;
  idx.built_for_n = n;
  idx.lists.resize(n);

  // x-sorted sweep: only spheres within dx < cutoff can be neighbors.
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return coords[3 * a] < coords[3 * b];
  });

  const double cut2 = cutoff * cutoff;
  for (std::size_t a = 0; a < n; ++a) {
    const std::uint32_t i = order[a];
    const double xi = coords[3 * i];
    const double yi = coords[3 * i + 1];
    const double zi = coords[3 * i + 2];
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::uint32_t j = order[b];
      const double dx = coords[3 * j] - xi;
      if (dx >= cutoff) break;
      const double dy = coords[3 * j + 1] - yi;
      const double dz = coords[3 * j + 2] - zi;
      if (dx * dx + dy * dy + dz * dz < cut2) {
        idx.lists[i].push_back(j);
        idx.lists[j].push_back(i);
      }
    }
  }
  for (auto& list : idx.lists) std::sort(list.begin(), list.end());
  return idx;
}

NeighborIndex build_neighbors(const Layout& layout, double cutoff) {
  return build_neighbors(std::span<const double>(layout.coords), cutoff);
}

bool same_structure(const NeighborIndex& a, const NeighborIndex& b) {
  if (a.built_for_n != b.built_for_n)
    throw std::invalid_argument("same_structure: indexes built for different n");
  return a.lists == b.lists;
}

namespace {

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

}  // namespace

NeighborEval neighbor_eval(std::span<const double> coords, double radius,
                           const NeighborIndex& idx, std::span<double> grad) {
  const std::size_t n = coords.size() / 3;
  const bool want_grad = !grad.empty();
  if (want_grad) std::fill(grad.begin(), grad.end(), 0.0);

  NeighborEval out;
  Kahan acc;
  Kahan dr;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = coords[3 * i];
    const double yi = coords[3 * i + 1];
    const double zi = coords[3 * i + 2];
    for (const std::uint32_t j : idx.lists[i]) {
      if (j <= i) continue;  // each pair counted once
      const double dx = xi - coords[3 * j];
      const double dy = yi - coords[3 * j + 1];
      const double dz = zi - coords[3 * j + 2];
      const double l2 = dx * dx + dy * dy + dz * dz;
      if (l2 >= 4.0) continue;
      const double l = std::sqrt(l2);
      const double o = 2.0 - l;
      acc.add(o * o);
      if (o > out.max_pair) out.max_pair = o;
      if (want_grad) {
        if (l < kernels::kSingularEps) {
          grad[3 * i] -= 2.0 * o;
          grad[3 * j] += 2.0 * o;
        } else {
          const double f = 2.0 * o / l;
          grad[3 * i] -= f * dx;
          grad[3 * i + 1] -= f * dy;
          grad[3 * i + 2] -= f * dz;
          grad[3 * j] += f * dx;
          grad[3 * j + 1] += f * dy;
          grad[3 * j + 2] += f * dz;
        }
      }
    }

    const double nrm = std::sqrt(xi * xi + yi * yi + zi * zi);
    const double o = nrm + 1.0 - radius;
    if (o > 0.0) {
      acc.add(o * o);
      dr.add(-2.0 * o);
      if (o > out.max_container) out.max_container = o;
      // no wall gradient at the origin kink (see the scalar kernel)
      if (want_grad && nrm >= kernels::kSingularEps) {
        const double f = 2.0 * o / nrm;
        grad[3 * i] += f * xi;
        grad[3 * i + 1] += f * yi;
        grad[3 * i + 2] += f * zi;
      }
    }
  }
  out.value = acc.sum;
  out.d_value_d_radius = dr.sum;
  return out;
}

EnergyReport energy_with_neighbors(const Solution& s, const NeighborIndex& idx) {
  const auto e = neighbor_eval(s.layout.coords, s.radius, idx, {});
  return {e.value, e.max_pair, e.max_container};
}

std::vector<double> gradient_with_neighbors(const Solution& s,
                                            const NeighborIndex& idx) {
  std::vector<double> grad(s.layout.coords.size());
  neighbor_eval(s.layout.coords, s.radius, idx, grad);
  return grad;
}

}  // namespace pess
