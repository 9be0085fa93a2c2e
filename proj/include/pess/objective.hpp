#pragma once

#include <span>

#include "pess/neighbor.hpp"

namespace pess {

// Evaluation contract for the optimizer. The first 3 * center_count()
// components of the variable vector are sphere centers; neighbor construction
// reads only those. Instances keep scratch buffers, so one instance belongs
// to one minimize call at a time.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dimension() const = 0;
  virtual std::size_t center_count() const = 0;

  // Value and gradient at x. idx == nullptr selects the brute-force path.
  virtual double evaluate(std::span<const double> x, const NeighborIndex* idx,
                          std::span<double> grad) = 0;

  // Clamp out-of-domain components in place; return true when x was changed
  // (the optimizer then re-evaluates and drops its curvature history).
  virtual bool sanitize(std::span<double> /*x*/) { return false; }
};

// Elastic energy E at a fixed container radius; variables are the 3n centers.
class ElasticObjective final : public Objective {
 public:
  ElasticObjective(std::size_t n, double radius) : n_(n), radius_(radius) {}

  std::size_t dimension() const override { return 3 * n_; }
  std::size_t center_count() const override { return n_; }
  double radius() const { return radius_; }

  double evaluate(std::span<const double> x, const NeighborIndex* idx,
                  std::span<double> grad) override;

 private:
  std::size_t n_;
  double radius_;
};

// Penalized energy U = E + lambda * R^2 over 3n + 1 variables, the last one
// being the container radius.
class PenalizedObjective final : public Objective {
 public:
  explicit PenalizedObjective(std::size_t n, double lambda = 0.0)
      : n_(n), lambda_(lambda) {}

  std::size_t dimension() const override { return 3 * n_ + 1; }
  std::size_t center_count() const override { return n_; }

  void set_lambda(double lambda) { lambda_ = lambda; }
  double lambda() const { return lambda_; }

  double evaluate(std::span<const double> x, const NeighborIndex* idx,
                  std::span<double> grad) override;

  // Line-search overshoot can drive R nonpositive; clamp it.
  bool sanitize(std::span<double> x) override;

  static constexpr double kMinRadius = 1e-6;

 private:
  std::size_t n_;
  double lambda_;
};

}  // namespace pess
