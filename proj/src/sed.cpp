#include <algorithm>
#include <cmath>

#include "pess/geometry.hpp"
#include "pess/sed.hpp"

namespace pess {

int exploration_count(double e, double c, int cap) {
  if (e <= 0.0) return cap;
  const double j = std::ceil(-c * std::log2(e));
  if (j >= static_cast<double>(cap)) return cap;
  return std::max(1, static_cast<int>(j));
}

Layout perturb(const Layout& layout, double theta, RngStream& rng) {
  Layout out = layout;
  for (double& v : out.coords) v += rng.uniform(-theta, theta);
  return out;
}

Layout random_layout(std::size_t n, double R, RngStream& rng) {
  const double a = std::max(R - 1.0, 0.0);
  Layout out(n);
  for (std::size_t i = 0; i < n; ++i) {
    // rejection sampling from the enclosing cube
    double x = 0.0, y = 0.0, z = 0.0;
    if (a > 0.0) {
      do {
        x = rng.uniform(-a, a);
        y = rng.uniform(-a, a);
        z = rng.uniform(-a, a);
      } while (x * x + y * y + z * z > a * a);
    }
    out.set_center(i, {x, y, z});
  }
  return out;
}

std::size_t select_index(double current_energy,
                         std::span<const Candidate> candidates, double c,
                         int cap, RngStream& rng) {
  std::size_t argmin = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i)
    if (candidates[i].energy < candidates[argmin].energy) argmin = i;
  if (candidates[argmin].energy < current_energy) return argmin;

  // softmax over J values, stabilized by max subtraction
  std::vector<double> j(candidates.size());
  double jmax = -1e300;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    j[i] = static_cast<double>(exploration_count(candidates[i].energy, c, cap));
    jmax = std::max(jmax, j[i]);
  }
  double total = 0.0;
  for (double& v : j) {
    v = std::exp(v - jmax);
    total += v;
  }
  const double u = rng.uniform(0.0, total);
  double acc = 0.0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    acc += j[i];
    if (u <= acc) return i;
  }
  return j.size() - 1;
}

SedResult sed(std::size_t n, double R, const SedSettings& settings,
              const OptimizerSettings& opt, RngStream& rng,
              const Deadline& deadline) {
  auto past_deadline = [&]() {
    return deadline && std::chrono::steady_clock::now() > *deadline;
  };

  ElasticObjective obj(n, R);
  auto descend = [&](Layout layout) {
    auto res = minimize(obj, std::move(layout.coords), opt);
    double e = brute_eval(res.x, R, {}).value;
    if (res.report.converged && e > settings.feasible_energy &&
        e < 1e6 * settings.feasible_energy) {
      // polish: one tighter pass to settle a near-feasible basin
      OptimizerSettings tight = opt;
      tight.grad_tol = opt.grad_tol * 1e-3;
      res = minimize(obj, std::move(res.x), tight);
      e = brute_eval(res.x, R, {}).value;
    }
    return Candidate{Layout{std::move(res.x)}, e};
  };

  SedResult out;
  Candidate current = descend(random_layout(n, R, rng));
  Candidate best = current;

  for (int i = 1; i <= settings.s_iter; ++i) {
    if (best.energy <= settings.feasible_energy) break;
    if (past_deadline()) {
      out.deadline_hit = true;
      break;
    }

    const double entering_energy = current.energy;
    const int m =
        exploration_count(entering_energy, settings.c, settings.exploration_cap);
    std::vector<Candidate> candidates;
    candidates.reserve(static_cast<std::size_t>(m));
    RngStream round_rng = rng.split(0x5ed0000 + static_cast<std::uint64_t>(i));
    for (int jc = 0; jc < m; ++jc) {
      if (past_deadline()) {
        out.deadline_hit = true;
        break;
      }
      RngStream sub = round_rng.split(static_cast<std::uint64_t>(jc));
      candidates.push_back(
          descend(perturb(current.layout, settings.theta, sub)));
    }
    if (candidates.empty()) break;

    const std::size_t pick = select_index(
        current.energy, candidates, settings.c, settings.exploration_cap, rng);
    current = std::move(candidates[pick]);
    if (current.energy < best.energy) best = current;

    out.trace.push_back({entering_energy, m, best.energy});
    out.iterations = i;
    if (out.deadline_hit) break;
  }

  out.feasible = best.energy <= settings.feasible_energy;
  out.energy = best.energy;
  out.layout = std::move(best.layout);
  return out;
}

}  // namespace pess
