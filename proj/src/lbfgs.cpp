#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pess/lbfgs.hpp"

namespace pess {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

void LbfgsHistory::push(std::vector<double> s, std::vector<double> y) {
  const double sy = dot(s, y);
  const double sn = norm2(s);
  const double yn = norm2(y);
  if (sy <= 1e-12 * sn * yn) return;  // curvature condition violated
  pairs_.push_back({std::move(s), std::move(y), 1.0 / sy});
  if (static_cast<int>(pairs_.size()) > memory_) pairs_.pop_front();
}

double LbfgsHistory::initial_scaling() const {
  if (pairs_.empty()) return 1.0;
  const Pair& p = pairs_.back();
  const double yy = dot(p.y, p.y);
  if (yy <= 0.0) return 1.0;
  return 1.0 / (p.rho * yy);  // (s.y) / (y.y)
}

void two_loop_recursion(const LbfgsHistory& history, std::span<const double> g,
                        std::span<double> d) {
  const auto& pairs = history.pairs();
  std::copy(g.begin(), g.end(), d.begin());

  std::vector<double> alpha(pairs.size());
  for (std::size_t k = pairs.size(); k-- > 0;) {
    const auto& p = pairs[k];
    alpha[k] = p.rho * dot(p.s, d);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= alpha[k] * p.y[i];
  }

  const double gamma = history.initial_scaling();
  for (double& v : d) v *= gamma;

  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& p = pairs[k];
    const double beta = p.rho * dot(p.y, d);
    for (std::size_t i = 0; i < d.size(); ++i)
      d[i] += (alpha[k] - beta) * p.s[i];
  }

  for (double& v : d) v = -v;
}

namespace {

constexpr double kWolfeC1 = 1e-4;
constexpr double kWolfeC2 = 0.9;

// Minimizer of the cubic through (a0, f0, d0) and (a1, f1, d1); NaN when
// degenerate.
double cubic_min(double a0, double f0, double d0, double a1, double f1,
                 double d1) {
  const double h = a1 - a0;
  if (h == 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double d = d0 + d1 - 3.0 * (f0 - f1) / (a0 - a1);
  double disc = d * d - d0 * d1;
  if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
  double s = std::sqrt(disc);
  if (h < 0.0) s = -s;
  return a1 - (a1 - a0) * (d1 + s - d) / (d1 + d0 + 2.0 * s);
}

}  // namespace

LineSearchResult line_search(Objective& f, const NeighborIndex* idx,
                             std::span<const double> x, std::span<const double> d,
                             double f0, std::span<const double> g0,
                             std::span<double> x_out, std::span<double> g_out) {
  const std::size_t n = x.size();
  const double dphi0 = dot(g0, d);

  double best_alpha = 0.0;
  double best_value = f0;
  double last_eval_alpha = -1.0;

  auto eval = [&](double a) {
    for (std::size_t i = 0; i < n; ++i) x_out[i] = x[i] + a * d[i];
    const double fa = f.evaluate(x_out, idx, g_out);
    last_eval_alpha = a;
    if (std::isfinite(fa) && fa < best_value) {
      best_alpha = a;
      best_value = fa;
    }
    return std::make_pair(fa, dot(g_out, d));
  };

  auto finish = [&](double a, double value, bool ok) {
    if (last_eval_alpha != a) eval(a);
    return LineSearchResult{a, value, ok};
  };

  auto fail = [&]() { return finish(best_alpha, best_value, false); };

  auto zoom = [&](double lo, double flo, double dlo, double hi, double fhi,
                  double dhi) {
    for (int it = 0; it < 30; ++it) {
      double aj = cubic_min(lo, flo, dlo, hi, fhi, dhi);
      const double left = std::min(lo, hi);
      const double right = std::max(lo, hi);
      const double margin = 0.1 * (right - left);
      if (!std::isfinite(aj) || aj <= left + margin || aj >= right - margin)
        aj = 0.5 * (lo + hi);

      const auto [fj, dfj] = eval(aj);
      if (!std::isfinite(fj)) return fail();
      if (fj > f0 + kWolfeC1 * aj * dphi0 || fj >= flo) {
        hi = aj;
        fhi = fj;
        dhi = dfj;
      } else {
        if (std::abs(dfj) <= -kWolfeC2 * dphi0) return finish(aj, fj, true);
        if (dfj * (hi - lo) >= 0.0) {
          hi = lo;
          fhi = flo;
          dhi = dlo;
        }
        lo = aj;
        flo = fj;
        dlo = dfj;
      }
      if (std::abs(hi - lo) <= 1e-16 * std::max(1.0, std::abs(lo))) break;
    }
    return fail();
  };

  double a_prev = 0.0, f_prev = f0, df_prev = dphi0;
  double a = 1.0;
  constexpr double kAlphaMax = 1e8;
  for (int it = 0; it < 20; ++it) {
    const auto [fa, dfa] = eval(a);
    if (!std::isfinite(fa)) {
      // step too long; retreat
      a = 0.5 * (a_prev + a);
      continue;
    }
    if (fa > f0 + kWolfeC1 * a * dphi0 || (it > 0 && fa >= f_prev))
      return zoom(a_prev, f_prev, df_prev, a, fa, dfa);
    if (std::abs(dfa) <= -kWolfeC2 * dphi0) return finish(a, fa, true);
    if (dfa >= 0.0) return zoom(a, fa, dfa, a_prev, f_prev, df_prev);
    a_prev = a;
    f_prev = fa;
    df_prev = dfa;
    a = std::min(2.0 * a, kAlphaMax);
    if (a >= kAlphaMax) break;
  }
  return fail();
}

MinimizeResult minimize(
    Objective& f, std::vector<double> x0, const OptimizerSettings& settings,
    const std::function<void(const IterationInfo&)>& observer) {
  const std::size_t dim = f.dimension();
  const std::size_t ncoords = 3 * f.center_count();
  if (x0.size() != dim)
    throw std::invalid_argument("minimize: dimension mismatch");

  std::vector<double> x = std::move(x0);
  auto centers = [&]() {
    return std::span<const double>(x.data(), ncoords);
  };

  OptimizeReport rep;
  NeighborIndex idx = build_neighbors(centers(), settings.cutoff);
  long cnt = 0;
  double len = static_cast<double>(settings.len_reset);

  std::vector<double> g(dim), d(dim), x_new(dim), g_new(dim);
  double fx = f.evaluate(x, &idx, g);
  if (!std::isfinite(fx))
    throw std::runtime_error("minimize: non-finite objective at start");
  double gnorm = norm2(g);

  // Snapshot of centers at the last rebuild; only kept for the observer.
  std::vector<double> rebuild_ref;
  if (observer) rebuild_ref.assign(x.begin(), x.begin() + ncoords);

  LbfgsHistory hist(settings.memory);

  for (long iter = 0; iter < settings.max_iter && gnorm > settings.grad_tol;
       ++iter) {
    two_loop_recursion(hist, g, d);
    if (dot(g, d) >= 0.0) {
      for (std::size_t i = 0; i < dim; ++i) d[i] = -g[i];
      hist.clear();
    }

    LineSearchResult ls = line_search(f, &idx, x, d, fx, g, x_new, g_new);
    if (!ls.success) {
      hist.clear();
      if (!(ls.alpha > 0.0 && ls.value < fx)) {
        // bounded steepest-descent fallback
        bool moved = false;
        double a = 1.0 / std::max(1.0, gnorm);
        for (int bt = 0; bt < 40; ++bt, a *= 0.5) {
          for (std::size_t i = 0; i < dim; ++i) x_new[i] = x[i] - a * g[i];
          const double ft = f.evaluate(x_new, &idx, g_new);
          if (std::isfinite(ft) && ft < fx) {
            ls.alpha = a;
            ls.value = ft;
            moved = true;
            break;
          }
        }
        if (!moved) break;  // stalled; report whatever we have
      }
    }

    // accept the step
    std::vector<double> s(dim), y(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      s[i] = x_new[i] - x[i];
      y[i] = g_new[i] - g[i];
    }
    if (ls.success) hist.push(std::move(s), std::move(y));
    x.swap(x_new);
    g.swap(g_new);
    fx = ls.value;
    if (!std::isfinite(fx))
      throw std::runtime_error("minimize: non-finite objective value");

    if (f.sanitize(x)) {
      fx = f.evaluate(x, &idx, g);
      hist.clear();
    }

    ++rep.iterations;
    ++cnt;

    if (settings.rebuild_every_iter || cnt >= len) {
      ++rep.maintenance_checks;
      rep.len_trace.push_back(len);
      NeighborIndex fresh = build_neighbors(centers(), settings.cutoff);
      const bool changed = !same_structure(idx, fresh);
      rep.rebuild_trace.push_back(
          static_cast<char>(settings.rebuild_every_iter || changed));
      if (settings.rebuild_every_iter) {
        idx = std::move(fresh);
        ++rep.rebuilds;
        cnt = 0;
        len = static_cast<double>(settings.len_reset);
        if (changed) fx = f.evaluate(x, &idx, g);
      } else if (changed) {
        idx = std::move(fresh);
        ++rep.rebuilds;
        cnt = 0;
        len = static_cast<double>(settings.len_reset);
        fx = f.evaluate(x, &idx, g);
      } else {
        cnt = 0;
        len *= settings.len_factor;
      }
      if (observer) rebuild_ref.assign(x.begin(), x.begin() + ncoords);
    }

    gnorm = norm2(g);

    if (observer) {
      double max_disp = 0.0;
      for (std::size_t i = 0; i < ncoords / 3; ++i) {
        const double dx = x[3 * i] - rebuild_ref[3 * i];
        const double dy = x[3 * i + 1] - rebuild_ref[3 * i + 1];
        const double dz = x[3 * i + 2] - rebuild_ref[3 * i + 2];
        max_disp = std::max(max_disp, std::sqrt(dx * dx + dy * dy + dz * dz));
      }
      observer(IterationInfo{rep.iterations, x, fx, gnorm, &idx, max_disp});
    }
  }

  rep.final_value = fx;
  rep.final_grad_norm = gnorm;
  rep.converged = gnorm <= settings.grad_tol;
  return {std::move(x), std::move(rep)};
}

}  // namespace pess
