#include <cmath>

#include "pess/kernels.hpp"

// Compiled with -mavx2 on x86-64; elsewhere this TU only provides the null
// accessor.

#if defined(__AVX2__)
#include <immintrin.h>

namespace pess::kernels {

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

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

PairResult pair_eval_avx2(const double* xs, const double* ys,
                          const double* zs, std::size_t n,
                          double* gx, double* gy, double* gz) {
  PairResult r;
  Kahan acc;
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d eps = _mm256_set1_pd(kSingularEps);
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d vmax = zero;

  for (std::size_t i = 0; i < n; ++i) {
    const __m256d xi = _mm256_set1_pd(xs[i]);
    const __m256d yi = _mm256_set1_pd(ys[i]);
    const __m256d zi = _mm256_set1_pd(zs[i]);
    __m256d esum = zero;
    __m256d gxi = zero, gyi = zero, gzi = zero;

    std::size_t j = i + 1;
    for (; j + 4 <= n; j += 4) {
      const __m256d dx = _mm256_sub_pd(xi, _mm256_loadu_pd(xs + j));
      const __m256d dy = _mm256_sub_pd(yi, _mm256_loadu_pd(ys + j));
      const __m256d dz = _mm256_sub_pd(zi, _mm256_loadu_pd(zs + j));
      __m256d l2 = _mm256_mul_pd(dx, dx);
      l2 = _mm256_add_pd(l2, _mm256_mul_pd(dy, dy));
      l2 = _mm256_add_pd(l2, _mm256_mul_pd(dz, dz));
      const __m256d l = _mm256_sqrt_pd(l2);
      const __m256d o = _mm256_max_pd(zero, _mm256_sub_pd(two, l));
      esum = _mm256_add_pd(esum, _mm256_mul_pd(o, o));
      vmax = _mm256_max_pd(vmax, o);

      if (gx != nullptr) {
        // direction d/l; coincident lanes get the fixed +x pseudo-direction
        const __m256d lsafe = _mm256_max_pd(l, eps);
        const __m256d sing = _mm256_cmp_pd(l, eps, _CMP_LT_OQ);
        __m256d ux = _mm256_div_pd(dx, lsafe);
        __m256d uy = _mm256_div_pd(dy, lsafe);
        __m256d uz = _mm256_div_pd(dz, lsafe);
        ux = _mm256_blendv_pd(ux, one, sing);
        uy = _mm256_blendv_pd(uy, zero, sing);
        uz = _mm256_blendv_pd(uz, zero, sing);
        const __m256d coef = _mm256_add_pd(o, o);  // 2 * O
        const __m256d cx = _mm256_mul_pd(coef, ux);
        const __m256d cy = _mm256_mul_pd(coef, uy);
        const __m256d cz = _mm256_mul_pd(coef, uz);
        gxi = _mm256_sub_pd(gxi, cx);
        gyi = _mm256_sub_pd(gyi, cy);
        gzi = _mm256_sub_pd(gzi, cz);
        _mm256_storeu_pd(gx + j, _mm256_add_pd(_mm256_loadu_pd(gx + j), cx));
        _mm256_storeu_pd(gy + j, _mm256_add_pd(_mm256_loadu_pd(gy + j), cy));
        _mm256_storeu_pd(gz + j, _mm256_add_pd(_mm256_loadu_pd(gz + j), cz));
      }
    }

    double etail = 0.0;
    double gxi_s = 0.0, gyi_s = 0.0, gzi_s = 0.0;
    for (; j < n; ++j) {
      const double dx = xs[i] - xs[j];
      const double dy = ys[i] - ys[j];
      const double dz = zs[i] - zs[j];
      const double l2 = dx * dx + dy * dy + dz * dz;
      if (l2 >= 4.0) continue;
      const double l = std::sqrt(l2);
      const double o = 2.0 - l;
      etail += o * o;
      if (o > r.max_overlap) r.max_overlap = o;
      if (gx != nullptr) {
        if (l < kSingularEps) {
          gxi_s -= 2.0 * o;
          gx[j] += 2.0 * o;
        } else {
          const double f = 2.0 * o / l;
          gxi_s -= f * dx;
          gyi_s -= f * dy;
          gzi_s -= f * dz;
          gx[j] += f * dx;
          gy[j] += f * dy;
          gz[j] += f * dz;
        }
      }
    }

    acc.add(hsum(esum) + etail);
    if (gx != nullptr) {
      gx[i] += hsum(gxi) + gxi_s;
      gy[i] += hsum(gyi) + gyi_s;
      gz[i] += hsum(gzi) + gzi_s;
    }
  }

  const double vm = hmax(vmax);
  if (vm > r.max_overlap) r.max_overlap = vm;
  r.energy = acc.sum;
  return r;
}

WallResult wall_eval_avx2(const double* xs, const double* ys,
                          const double* zs, std::size_t n, double radius,
                          double* gx, double* gy, double* gz) {
  WallResult r;
  Kahan acc;
  Kahan dr;
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d eps = _mm256_set1_pd(kSingularEps);
  const __m256d rad = _mm256_set1_pd(radius);
  __m256d vmax = zero;

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(xs + i);
    const __m256d y = _mm256_loadu_pd(ys + i);
    const __m256d z = _mm256_loadu_pd(zs + i);
    __m256d n2 = _mm256_mul_pd(x, x);
    n2 = _mm256_add_pd(n2, _mm256_mul_pd(y, y));
    n2 = _mm256_add_pd(n2, _mm256_mul_pd(z, z));
    const __m256d nrm = _mm256_sqrt_pd(n2);
    const __m256d o =
        _mm256_max_pd(zero, _mm256_sub_pd(_mm256_add_pd(nrm, one), rad));
    acc.add(hsum(_mm256_mul_pd(o, o)));
    dr.add(-2.0 * hsum(o));
    vmax = _mm256_max_pd(vmax, o);

    if (gx != nullptr) {
      const __m256d nsafe = _mm256_max_pd(nrm, eps);
      const __m256d sing = _mm256_cmp_pd(nrm, eps, _CMP_LT_OQ);
      // zero direction on singular lanes: the kink at the origin has no
      // usable descent direction for the wall term
      __m256d ux = _mm256_div_pd(x, nsafe);
      __m256d uy = _mm256_div_pd(y, nsafe);
      __m256d uz = _mm256_div_pd(z, nsafe);
      ux = _mm256_blendv_pd(ux, zero, sing);
      uy = _mm256_blendv_pd(uy, zero, sing);
      uz = _mm256_blendv_pd(uz, zero, sing);
      const __m256d coef = _mm256_add_pd(o, o);
      _mm256_storeu_pd(
          gx + i, _mm256_add_pd(_mm256_loadu_pd(gx + i), _mm256_mul_pd(coef, ux)));
      _mm256_storeu_pd(
          gy + i, _mm256_add_pd(_mm256_loadu_pd(gy + i), _mm256_mul_pd(coef, uy)));
      _mm256_storeu_pd(
          gz + i, _mm256_add_pd(_mm256_loadu_pd(gz + i), _mm256_mul_pd(coef, uz)));
    }
  }

  for (; i < n; ++i) {
    const double x = xs[i], y = ys[i], z = zs[i];
    const double nrm = std::sqrt(x * x + y * y + z * z);
    const double o = nrm + 1.0 - radius;
    if (o <= 0.0) continue;
    acc.add(o * o);
    dr.add(-2.0 * o);
    if (o > r.max_overlap) r.max_overlap = o;
    if (gx != nullptr && nrm >= kSingularEps) {
      const double f = 2.0 * o / nrm;
      gx[i] += f * x;
      gy[i] += f * y;
      gz[i] += f * z;
    }
  }

  const double vm = hmax(vmax);
  if (vm > r.max_overlap) r.max_overlap = vm;
  r.energy = acc.sum;
  r.d_energy_d_radius = dr.sum;
  return r;
}

}  // namespace

const KernelSet* avx2_kernels() {
  static const KernelSet set{pair_eval_avx2, wall_eval_avx2, "avx2"};
  return &set;
}

}  // namespace pess::kernels

#else

namespace pess::kernels {
const KernelSet* avx2_kernels() { return nullptr; }
}  // namespace pess::kernels

#endif
