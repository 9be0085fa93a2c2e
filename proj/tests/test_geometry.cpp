#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "pess/geometry.hpp"
#include "pess/rng.hpp"

using namespace pess;

namespace {

// Finite-difference oracle: central differences of the brute-force energy.
std::vector<double> fd_gradient(const Solution& s, double step = 1e-6) {
  std::vector<double> g(s.layout.coords.size());
  Solution probe = s;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double orig = probe.layout.coords[k];
    probe.layout.coords[k] = orig + step;
    const double fp = energy(probe).total;
    probe.layout.coords[k] = orig - step;
    const double fm = energy(probe).total;
    probe.layout.coords[k] = orig;
    g[k] = (fp - fm) / (2.0 * step);
  }
  return g;
}

Layout random_overlapping_layout(std::size_t n, double radius, RngStream& rng) {
  Layout layout(n);
  const double a = std::max(radius - 1.0, 0.5);
  for (std::size_t i = 0; i < n; ++i)
    layout.set_center(i, {rng.uniform(-a, a), rng.uniform(-a, a),
                          rng.uniform(-a, a)});
  return layout;
}

}  // namespace

TEST_CASE("pair_overlap basics") {
  CHECK(pair_overlap({0, 0, 0}, {2, 0, 0}) == 0.0);
  CHECK(pair_overlap({0, 0, 0}, {0, 0, 0}) == 2.0);
  CHECK(pair_overlap({0, 0, 0}, {1, 0, 0}) == 1.0);
}

TEST_CASE("pair_overlap is symmetric, non-negative, bounded by 2") {
  RngStream rng(1);
  for (int t = 0; t < 200; ++t) {
    const Point3 a{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const Point3 b{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const double o = pair_overlap(a, b);
    CHECK(o == pair_overlap(b, a));
    CHECK(o >= 0.0);
    CHECK(o <= 2.0);
  }
}

TEST_CASE("pair terms are translation invariant") {
  RngStream rng(2);
  for (int t = 0; t < 100; ++t) {
    Point3 a{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    Point3 b{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const Point3 shift{rng.uniform(-9, 9), rng.uniform(-9, 9),
                       rng.uniform(-9, 9)};
    const double o = pair_overlap(a, b);
    for (int k = 0; k < 3; ++k) {
      a[k] += shift[k];
      b[k] += shift[k];
    }
    CHECK(pair_overlap(a, b) == doctest::Approx(o).epsilon(1e-14));
  }
}

TEST_CASE("container_overlap basics") {
  CHECK(container_overlap({0, 0, 0}, 2.0) == 0.0);
  CHECK(container_overlap({1, 0, 0}, 2.0) == 0.0);
  CHECK(container_overlap({1.5, 0, 0}, 2.0) == doctest::Approx(0.5));
}

TEST_CASE("energy of known configurations") {
  SUBCASE("two tangent spheres at optimum") {
    Solution s{Layout{{-1, 0, 0, 1, 0, 0}}, 2.0};
    CHECK(energy(s).total == 0.0);
  }
  SUBCASE("coincident pair") {
    Solution s{Layout{{0, 0, 0, 0, 0, 0}}, 2.0};
    const auto rep = energy(s);
    CHECK(rep.total == doctest::Approx(4.0));
    CHECK(rep.max_pair_overlap == doctest::Approx(2.0));
  }
  SUBCASE("three spheres, equilateral triangle of side 2") {
    // circumradius 2/sqrt(3)
    const double rc = 2.0 / std::sqrt(3.0);
    Layout layout(3);
    for (int i = 0; i < 3; ++i) {
      const double ang = 2.0 * M_PI * i / 3.0;
      layout.set_center(i, {rc * std::cos(ang), rc * std::sin(ang), 0.0});
    }
    Solution s{layout, 2.0 / std::sqrt(3.0) + 1.0};
    CHECK(energy(s).total <= 1e-28);
  }
}

TEST_CASE("energy is rotation invariant") {
  RngStream rng(3);
  for (int t = 0; t < 50; ++t) {
    Layout layout = random_overlapping_layout(8, 2.5, rng);
    Solution s{layout, 2.5};
    const double e0 = energy(s).total;

    // rotation about z by a random angle
    const double ang = rng.uniform(0, 2 * M_PI);
    const double c = std::cos(ang), sn = std::sin(ang);
    Layout rotated(8);
    for (std::size_t i = 0; i < 8; ++i) {
      const Point3 p = layout.center(i);
      rotated.set_center(i, {c * p[0] - sn * p[1], sn * p[0] + c * p[1], p[2]});
    }
    CHECK(energy({rotated, 2.5}).total == doctest::Approx(e0).epsilon(1e-12));
  }
}

TEST_CASE("gradient sign convention on the two-sphere line") {
  // spheres at (-0.5,0,0) and (0.5,0,0): O = 1
  Solution s{Layout{{-0.5, 0, 0, 0.5, 0, 0}}, 2.0};
  const auto g = energy_gradient(s);
  CHECK(g[0] == doctest::Approx(2.0));   // sphere 1 pushed toward -x
  CHECK(g[3] == doctest::Approx(-2.0));  // sphere 2 pushed toward +x
  CHECK(g[1] == 0.0);
  CHECK(g[4] == 0.0);
}

TEST_CASE("zero-energy layout has zero gradient") {
  Solution s{Layout{{-1, 0, 0, 1, 0, 0}}, 2.0};
  for (const double v : energy_gradient(s)) CHECK(v == 0.0);
}

TEST_CASE("analytic gradient matches central finite differences") {
  RngStream rng(4);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.next_u64() % 31;  // up to 32
    const double radius = std::cbrt(static_cast<double>(n) / 0.8);
    Solution s{random_overlapping_layout(n, radius, rng), radius};
    const auto g = energy_gradient(s);
    const auto fd = fd_gradient(s);
    // absolute floor at the central-difference cancellation noise,
    // ~eps * E / step
    const double noise = 2e-10 * std::max(1.0, energy(s).total);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double tol = std::max(1e-6 * std::abs(fd[k]), noise);
      CHECK(std::abs(g[k] - fd[k]) <= tol);
    }
  }
}

TEST_CASE("coincident-center gradient uses the +x pseudo-direction") {
  Solution s{Layout{{0.3, 0.4, 0.5, 0.3, 0.4, 0.5}}, 5.0};
  const auto g = energy_gradient(s);
  CHECK(g[0] == doctest::Approx(-4.0));  // -2 * O with O = 2
  CHECK(g[3] == doctest::Approx(4.0));
  CHECK(g[1] == 0.0);
  CHECK(g[2] == 0.0);
  for (const double v : g) CHECK(std::isfinite(v));
}

TEST_CASE("density") {
  CHECK(density({Layout(1), 1.0}) == doctest::Approx(1.0));
  CHECK(density({Layout(2), 2.0}) == doctest::Approx(0.25));
  const double r4 = std::sqrt(6.0) / 2.0 + 1.0;
  CHECK(density({Layout(4), r4}) == doctest::Approx(4.0 / (r4 * r4 * r4)));
  CHECK(density({Layout(4), r4}) == doctest::Approx(0.36326).epsilon(1e-4));
}

TEST_CASE("check_feasible") {
  SUBCASE("tangent pair is feasible at zero tolerance") {
    CHECK(check_feasible({Layout{{-1, 0, 0, 1, 0, 0}}, 2.0}, 0.0).feasible);
  }
  SUBCASE("slightly overlapping pair is rejected") {
    const auto rep =
        check_feasible({Layout{{-0.999, 0, 0, 0.999, 0, 0}}, 2.0}, 1e-9);
    REQUIRE_FALSE(rep.feasible);
    REQUIRE(rep.pair_violations.size() == 1);
    CHECK(rep.pair_violations[0].amount == doctest::Approx(0.002));
  }
  SUBCASE("regular tetrahedron with edge 2 at the optimal radius") {
    const double s = 1.0 / std::sqrt(2.0);
    Layout layout(4);
    layout.set_center(0, {s, s, s});
    layout.set_center(1, {s, -s, -s});
    layout.set_center(2, {-s, s, -s});
    layout.set_center(3, {-s, -s, s});
    CHECK(check_feasible({layout, std::sqrt(6.0) / 2.0 + 1.0}, 1e-9).feasible);
  }
  SUBCASE("wall violation is reported") {
    const auto rep = check_feasible({Layout{{1.5, 0, 0}}, 2.0}, 1e-9);
    REQUIRE_FALSE(rep.feasible);
    REQUIRE(rep.wall_violations.size() == 1);
    CHECK(rep.wall_violations[0].amount == doctest::Approx(0.5));
  }
}

TEST_CASE("zero energy implies geometric feasibility at tangency") {
  // exact-tangency chain: spheres at x = -2, 0, 2
  Solution s{Layout{{-2, 0, 0, 0, 0, 0, 2, 0, 0}}, 3.0};
  CHECK(energy(s).total == 0.0);
  CHECK(check_feasible(s, 1e-12).feasible);
}
