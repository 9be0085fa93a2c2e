#include "pess/container_adjust.hpp"

namespace pess {

AdjustResult adjust_container(const Solution& s, const PenaltySchedule& schedule,
                              const OptimizerSettings& opt) {
  const std::size_t n = s.layout.sphere_count();

  std::vector<double> z = s.layout.coords;
  z.push_back(s.radius);

  PenalizedObjective obj(n);
  double lambda = schedule.lambda0;

  AdjustResult out;
  for (int round = 0; round < schedule.rounds; ++round) {
    obj.set_lambda(lambda);
    out.lambdas_used.push_back(lambda);
    auto res = minimize(obj, std::move(z), opt);
    z = std::move(res.x);
    lambda *= schedule.factor;
  }
  out.final_lambda = lambda;

  out.solution.radius = z.back();
  z.pop_back();
  out.solution.layout.coords = std::move(z);

  out.report = check_feasible(out.solution, kAdjustFeasibilityTol);
  out.feasible = out.report.feasible;
  return out;
}

}  // namespace pess
