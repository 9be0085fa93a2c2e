#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "pess/pipeline.hpp"
#include "pess/solution_io.hpp"

using namespace pess;

namespace {

SolveConfig quick_config(std::size_t n, std::uint64_t seed) {
  SolveConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  cfg.t_cut_seconds = 30.0;  // hard cap; stall_limit stops far earlier
  cfg.stall_limit = 2;
  return cfg;
}

}  // namespace

TEST_CASE("lower-bound radius estimate") {
  // R0 = cbrt(n / 0.6)
  CHECK(std::cbrt(1.0 / 0.6) == doctest::Approx(1.18563).epsilon(1e-5));
  CHECK(std::cbrt(100.0 / 0.6) == doctest::Approx(5.50321).epsilon(1e-5));
}

TEST_CASE("initialization packs a single sphere into the unit container") {
  SolveConfig cfg = quick_config(1, 7);
  RngStream rng(cfg.seed);
  const Solution s = initialize(1, cfg, rng);
  CHECK(s.radius == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(check_feasible(s, 1e-7).feasible);
}

TEST_CASE("solve reaches the known two-sphere optimum") {
  const auto res = solve(quick_config(2, 8));
  REQUIRE(res.feasible);
  CHECK(res.best_radius == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(check_feasible(res.best, 1e-7).feasible);
  CHECK(res.best.layout.sphere_count() == 2);
  CHECK(res.best.radius == res.best_radius);
}

TEST_CASE("solve reaches the known three-sphere optimum") {
  const auto res = solve(quick_config(3, 9));
  REQUIRE(res.feasible);
  CHECK(res.best_radius ==
        doctest::Approx(2.0 / std::sqrt(3.0) + 1.0).epsilon(1e-5));
}

TEST_CASE("result bookkeeping is consistent") {
  const auto res = solve(quick_config(4, 10));
  REQUIRE(res.feasible);
  CHECK(res.iterations >= 1);
  CHECK(res.elapsed_s > 0.0);
  CHECK(res.time_to_best_s <= res.elapsed_s);
  CHECK(res.seed == 10);
  CHECK(res.best_radius == doctest::Approx(std::sqrt(6.0) / 2.0 + 1.0)
                               .epsilon(1e-5));
}

TEST_CASE("fixed seed and iteration cap give bit-identical output") {
  SolveConfig cfg = quick_config(10, 1234);
  cfg.stall_limit = 0;
  cfg.max_outer_iters = 2;
  const auto a = solve(cfg);
  const auto b = solve(cfg);
  REQUIRE(a.feasible);
  CHECK(format_solution(a.best) == format_solution(b.best));
  CHECK(a.iterations == b.iterations);
  CHECK(a.best_radius == b.best_radius);
}

TEST_CASE("different seeds explore different layouts") {
  SolveConfig a = quick_config(10, 1);
  SolveConfig b = quick_config(10, 2);
  a.max_outer_iters = b.max_outer_iters = 1;
  a.stall_limit = b.stall_limit = 0;
  const auto ra = solve(a);
  const auto rb = solve(b);
  CHECK(format_solution(ra.best) != format_solution(rb.best));
}

TEST_CASE("outer-iteration cap is honored") {
  SolveConfig cfg = quick_config(5, 11);
  cfg.stall_limit = 0;
  cfg.max_outer_iters = 3;
  const auto res = solve(cfg);
  CHECK(res.iterations <= 3);
}

TEST_CASE("solutions never violate constraints beyond tolerance") {
  for (const std::size_t n : {2, 5, 7}) {
    const auto res = solve(quick_config(n, 100 + n));
    REQUIRE(res.feasible);
    const auto rep = check_feasible(res.best, 1e-7);
    CHECK(rep.feasible);
    CHECK(res.best_radius >= 1.0);
  }
}
