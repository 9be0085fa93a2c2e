#include <algorithm>
#include <cmath>

#include "pess/geometry.hpp"
#include "pess/kernels.hpp"

namespace pess {

double pair_overlap(const Point3& a, const Point3& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return std::max(0.0, 2.0 - std::sqrt(dx * dx + dy * dy + dz * dz));
}

double container_overlap(const Point3& a, double radius) {
  const double nrm = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  return std::max(0.0, nrm + 1.0 - radius);
}

namespace {

struct Scratch {
  std::vector<double> xs, ys, zs, gx, gy, gz;
};

// SoA staging for the dense kernels; thread_local so concurrent callers do
// not share state.
thread_local Scratch tls_scratch;

}  // namespace

BruteEval brute_eval(std::span<const double> coords, double radius,
                     std::span<double> grad) {
  const std::size_t n = coords.size() / 3;
  Scratch& s = tls_scratch;
  s.xs.resize(n);
  s.ys.resize(n);
  s.zs.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.xs[i] = coords[3 * i];
    s.ys[i] = coords[3 * i + 1];
    s.zs[i] = coords[3 * i + 2];
  }
  double* gx = nullptr;
  double* gy = nullptr;
  double* gz = nullptr;
  const bool want_grad = !grad.empty();
  if (want_grad) {
    s.gx.assign(n, 0.0);
    s.gy.assign(n, 0.0);
    s.gz.assign(n, 0.0);
    gx = s.gx.data();
    gy = s.gy.data();
    gz = s.gz.data();
  }

  const auto& k = kernels::active_kernels();
  const auto pair = k.pair_eval(s.xs.data(), s.ys.data(), s.zs.data(), n, gx, gy, gz);
  const auto wall =
      k.wall_eval(s.xs.data(), s.ys.data(), s.zs.data(), n, radius, gx, gy, gz);

  if (want_grad) {
    for (std::size_t i = 0; i < n; ++i) {
      grad[3 * i] = s.gx[i];
      grad[3 * i + 1] = s.gy[i];
      grad[3 * i + 2] = s.gz[i];
    }
  }

  BruteEval out;
  out.value = pair.energy + wall.energy;
  out.max_pair = pair.max_overlap;
  out.max_container = wall.max_overlap;
  out.d_value_d_radius = wall.d_energy_d_radius;
  return out;
}

EnergyReport energy(const Solution& s) {
  const auto e = brute_eval(s.layout.coords, s.radius, {});
  return {e.value, e.max_pair, e.max_container};
}

std::vector<double> energy_gradient(const Solution& s) {
  std::vector<double> grad(s.layout.coords.size());
  brute_eval(s.layout.coords, s.radius, grad);
  return grad;
}

double density(const Solution& s) {
  const double n = static_cast<double>(s.layout.sphere_count());
  return n / (s.radius * s.radius * s.radius);
}

FeasibilityReport check_feasible(const Solution& s, double geom_tol) {
  FeasibilityReport rep;
  const std::size_t n = s.layout.sphere_count();
  for (std::size_t i = 0; i < n; ++i) {
    const Point3 ci = s.layout.center(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point3 cj = s.layout.center(j);
      const double dx = ci[0] - cj[0];
      const double dy = ci[1] - cj[1];
      const double dz = ci[2] - cj[2];
      const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
      if (dist < 2.0 - geom_tol)
        rep.pair_violations.push_back({i, j, 2.0 - dist});
    }
    const double nrm = std::sqrt(ci[0] * ci[0] + ci[1] * ci[1] + ci[2] * ci[2]);
    if (nrm + 1.0 > s.radius + geom_tol)
      rep.wall_violations.push_back({i, nrm + 1.0 - s.radius});
  }
  rep.feasible = rep.pair_violations.empty() && rep.wall_violations.empty();
  return rep;
}

}  // namespace pess
