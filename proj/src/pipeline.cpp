#include <chrono>
#include <cmath>
#include <stdexcept>

#include "pess/pipeline.hpp"

namespace pess {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

Solution initialize(std::size_t n, const SolveConfig& config, RngStream& rng) {
  const double radius =
      std::cbrt(static_cast<double>(n) / config.init_density);

  for (int attempt = 0; attempt < 2; ++attempt) {
    RngStream stream =
        attempt == 0 ? rng.split(0x1417) : rng.split(0x1417 + 1);
    SedResult sr = sed(n, radius, config.sed, config.opt, stream);
    AdjustResult ar = adjust_container({std::move(sr.layout), radius},
                                       config.schedule, config.opt);
    if (ar.feasible) return std::move(ar.solution);
  }
  throw std::runtime_error("initialize: container adjustment infeasible twice");
}

SolveResult solve(const SolveConfig& config) {
  const auto t0 = Clock::now();
  const auto deadline =
      t0 + std::chrono::duration_cast<Clock::duration>(
               std::chrono::duration<double>(config.t_cut_seconds));

  RngStream rng(config.seed);

  SolveResult out;
  out.seed = config.seed;
  out.best = initialize(config.n, config, rng);
  out.best_radius = out.best.radius;
  out.feasible = true;
  out.time_to_best_s = seconds_since(t0);

  int stall = 0;
  for (long iter = 0; Clock::now() <= deadline; ++iter) {
    if (config.max_outer_iters > 0 && iter >= config.max_outer_iters) break;
    if (config.stall_limit > 0 && stall >= config.stall_limit) break;

    const double search_radius =
        out.best_radius * (1.0 - config.radius_shrink_step);
    RngStream stream = rng.split(0x501e + static_cast<std::uint64_t>(iter));
    SedResult sr =
        sed(config.n, search_radius, config.sed, config.opt, stream, deadline);
    AdjustResult ar = adjust_container({std::move(sr.layout), search_radius},
                                       config.schedule, config.opt);
    ++out.iterations;

    if (ar.feasible && ar.solution.radius < out.best_radius) {
      out.best = std::move(ar.solution);
      out.best_radius = out.best.radius;
      out.time_to_best_s = seconds_since(t0);
      stall = 0;
    } else {
      ++stall;
    }
  }

  out.elapsed_s = seconds_since(t0);
  return out;
}

}  // namespace pess
