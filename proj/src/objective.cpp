#include "pess/objective.hpp"

#include "pess/geometry.hpp"

namespace pess {

double ElasticObjective::evaluate(std::span<const double> x,
                                  const NeighborIndex* idx,
                                  std::span<double> grad) {
  if (idx != nullptr) return neighbor_eval(x, radius_, *idx, grad).value;
  return brute_eval(x, radius_, grad).value;
}

double PenalizedObjective::evaluate(std::span<const double> x,
                                    const NeighborIndex* idx,
                                    std::span<double> grad) {
  const std::size_t dim = 3 * n_;
  const double radius = x[dim];
  const auto centers = x.first(dim);
  const auto center_grad = grad.empty() ? grad : grad.first(dim);

  double value;
  double d_dr;
  if (idx != nullptr) {
    const auto e = neighbor_eval(centers, radius, *idx, center_grad);
    value = e.value;
    d_dr = e.d_value_d_radius;
  } else {
    const auto e = brute_eval(centers, radius, center_grad);
    value = e.value;
    d_dr = e.d_value_d_radius;
  }
  value += lambda_ * radius * radius;
  if (!grad.empty()) grad[dim] = d_dr + 2.0 * lambda_ * radius;
  return value;
}

bool PenalizedObjective::sanitize(std::span<double> x) {
  double& radius = x[3 * n_];
  if (radius >= kMinRadius) return false;
  radius = kMinRadius;
  return true;
}

}  // namespace pess
