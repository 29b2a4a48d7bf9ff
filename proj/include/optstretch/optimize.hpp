#pragma once
// 1-D search helpers: golden-section minimization, bracketed bisection,
// and grid-then-refine extremum location.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

namespace optstretch {

// Golden-section minimum of f on [a,b]; assumes unimodality on the bracket.
inline std::pair<double, double> golden_min(
    const std::function<double(double)>& f, double a, double b,
    double xtol = 1e-10, int max_iter = 200) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < max_iter && (b - a) > xtol * std::max(1.0, std::abs(a) + std::abs(b)); ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

// Root of a sign-changing continuous f on [a,b] by bisection.
inline double bisect_root(const std::function<double(double)>& f, double a,
                          double b, double xtol = 1e-13, int max_iter = 200) {
  double fa = f(a), fb = f(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if ((fa > 0) == (fb > 0))
    throw std::invalid_argument("bisect_root: no sign change on bracket");
  for (int i = 0; i < max_iter && (b - a) > xtol * std::max(1.0, std::abs(b)); ++i) {
    const double m = 0.5 * (a + b), fm = f(m);
    if (fm == 0) return m;
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Minimum over [a,b]: coarse grid localizes the basin, golden section
// polishes inside the bracketing pair of cells.
inline std::pair<double, double> grid_then_golden_min(
    const std::function<double(double)>& f, double a, double b, int cells,
    double xtol = 1e-10) {
  if (cells < 2) throw std::invalid_argument("grid_then_golden_min: cells < 2");
  int best = 0;
  double fbest = f(a);
  for (int i = 1; i <= cells; ++i) {
    const double x = a + (b - a) * i / cells;
    const double fx = f(x);
    if (fx < fbest) {
      fbest = fx;
      best = i;
    }
  }
  const double lo = a + (b - a) * std::max(0, best - 1) / cells;
  const double hi = a + (b - a) * std::min(cells, best + 1) / cells;
  auto [x, fx] = golden_min(f, lo, hi, xtol);
  if (fbest < fx) return {a + (b - a) * best / cells, fbest};
  return {x, fx};
}

inline std::pair<double, double> grid_then_golden_max(
    const std::function<double(double)>& f, double a, double b, int cells,
    double xtol = 1e-10) {
  auto [x, v] = grid_then_golden_min([&](double t) { return -f(t); }, a, b,
                                     cells, xtol);
  return {x, -v};
}

}  // namespace optstretch
