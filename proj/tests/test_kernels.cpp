#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "pess/kernels.hpp"
#include "pess/rng.hpp"

using namespace pess;
using namespace pess::kernels;

namespace {

struct Soa {
  std::vector<double> xs, ys, zs;
  std::size_t n() const { return xs.size(); }
};

Soa random_soa(std::size_t n, double extent, RngStream& rng) {
  Soa s;
  s.xs.resize(n);
  s.ys.resize(n);
  s.zs.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.xs[i] = rng.uniform(-extent, extent);
    s.ys[i] = rng.uniform(-extent, extent);
    s.zs[i] = rng.uniform(-extent, extent);
  }
  return s;
}

}  // namespace

TEST_CASE("scalar and AVX2 kernels agree") {
  const KernelSet* avx2 = avx2_kernels();
  if (avx2 == nullptr) return;  // nothing to compare on this host
  const KernelSet& scalar = scalar_kernels();

  RngStream rng(11);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng.next_u64() % 130;
    const double extent = 1.0 + 0.05 * static_cast<double>(n);
    const Soa s = random_soa(n, extent, rng);
    const double radius = rng.uniform(1.0, extent);

    std::vector<double> gx_s(n, 0.0), gy_s(n, 0.0), gz_s(n, 0.0);
    std::vector<double> gx_v(n, 0.0), gy_v(n, 0.0), gz_v(n, 0.0);

    const auto ps = scalar.pair_eval(s.xs.data(), s.ys.data(), s.zs.data(), n,
                                     gx_s.data(), gy_s.data(), gz_s.data());
    const auto pv = avx2->pair_eval(s.xs.data(), s.ys.data(), s.zs.data(), n,
                                    gx_v.data(), gy_v.data(), gz_v.data());
    CHECK(pv.energy == doctest::Approx(ps.energy).epsilon(1e-12).scale(1.0));
    CHECK(pv.max_overlap == doctest::Approx(ps.max_overlap).epsilon(1e-14));

    const auto ws = scalar.wall_eval(s.xs.data(), s.ys.data(), s.zs.data(), n,
                                     radius, gx_s.data(), gy_s.data(),
                                     gz_s.data());
    const auto wv = avx2->wall_eval(s.xs.data(), s.ys.data(), s.zs.data(), n,
                                    radius, gx_v.data(), gy_v.data(),
                                    gz_v.data());
    CHECK(wv.energy == doctest::Approx(ws.energy).epsilon(1e-12).scale(1.0));
    CHECK(wv.max_overlap == doctest::Approx(ws.max_overlap).epsilon(1e-14));
    CHECK(wv.d_energy_d_radius ==
          doctest::Approx(ws.d_energy_d_radius).epsilon(1e-12).scale(1.0));

    for (std::size_t i = 0; i < n; ++i) {
      CHECK(gx_v[i] == doctest::Approx(gx_s[i]).epsilon(1e-11).scale(1.0));
      CHECK(gy_v[i] == doctest::Approx(gy_s[i]).epsilon(1e-11).scale(1.0));
      CHECK(gz_v[i] == doctest::Approx(gz_s[i]).epsilon(1e-11).scale(1.0));
    }
  }
}

TEST_CASE("kernels handle coincident centers without NaN") {
  for (const KernelSet* set : {&scalar_kernels(), avx2_kernels()}) {
    if (set == nullptr) continue;
    CAPTURE(set->name);
    // 6 coincident spheres so the vector path covers full lanes
    const std::size_t n = 6;
    std::vector<double> xs(n, 0.25), ys(n, -0.5), zs(n, 0.75);
    std::vector<double> gx(n, 0.0), gy(n, 0.0), gz(n, 0.0);
    const auto p = set->pair_eval(xs.data(), ys.data(), zs.data(), n,
                                  gx.data(), gy.data(), gz.data());
    CHECK(p.energy == doctest::Approx(4.0 * 15));  // C(6,2) pairs of O = 2
    CHECK(p.max_overlap == doctest::Approx(2.0));
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::isfinite(gx[i]));
      CHECK(gy[i] == 0.0);
      CHECK(gz[i] == 0.0);
    }
  }
}

TEST_CASE("wall kernel keeps a zero gradient at the origin kink") {
  // |c| is not differentiable at 0 and every direction increases the
  // overlap, so the only usable (sub)gradient for the wall term is zero
  for (const KernelSet* set : {&scalar_kernels(), avx2_kernels()}) {
    if (set == nullptr) continue;
    CAPTURE(set->name);
    const std::size_t n = 5;  // exercises vector body and scalar tail
    std::vector<double> xs(n, 0.0), ys(n, 0.0), zs(n, 0.0);
    std::vector<double> gx(n, 0.0), gy(n, 0.0), gz(n, 0.0);
    const double radius = 0.5;  // pathological R < 1: O_i0 = 0.5
    const auto w = set->wall_eval(xs.data(), ys.data(), zs.data(), n, radius,
                                  gx.data(), gy.data(), gz.data());
    CHECK(w.energy == doctest::Approx(n * 0.25));
    CHECK(w.d_energy_d_radius ==
          doctest::Approx(-static_cast<double>(n)));
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(gx[i] == 0.0);
      CHECK(gy[i] == 0.0);
      CHECK(gz[i] == 0.0);
    }
  }
}

TEST_CASE("active kernel set is one of the known implementations") {
  const KernelSet& k = active_kernels();
  const bool known = std::string(k.name) == "scalar" ||
                     std::string(k.name) == "avx2";
  CHECK(known);
}
