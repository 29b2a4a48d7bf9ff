#pragma once
// Convex decreasing curves in the first quadrant, given as graphs y = f(x)
// with inverse x = g(y), plus the built-in p-ellipse family
// |x|^p + |y|^p = 1 with all of its closed-form data.

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "optstretch/quadrature.hpp"

namespace optstretch {

struct CurveModel {
  double L = 1, M = 1;            // x- and y-intercepts
  std::function<double(double)> f, g;    // graph and inverse
  std::function<double(double)> f1, f2;  // f', f'' on (alpha, L)
  std::function<double(double)> g1, g2;  // g', g'' on (beta, M)
  double area = 0;

  // hypothesis data for the two-term estimates (only when the curve is
  // convex toward the origin; p-ellipses populate it for 0 < p < 1)
  bool has_hypothesis = false;
  double alpha = 0, beta = 0;            // (alpha, beta) on the curve
  std::vector<double> alpha_partition;   // alpha = a0 < ... < am = L, f'' monotone per cell
  std::vector<double> beta_partition;
  std::function<double(double)> delta_fn, epsilon_fn;  // r -> (0, L/2-alpha) etc.
  struct Exponents {
    double a1 = 0, a2 = 0, b1 = 0, b2 = 0, e = 0;
  } exponents;

  // p > 0 marks the built-in family; membership then uses the implicit form
  double p = 0;

  // lazily filled by curvature_integral; copies share the value
  mutable std::shared_ptr<std::pair<double, double>> curvature_cache;
};

struct PEllipseParams {
  double p;
};

inline CurveModel make_p_ellipse(double p) {
  if (!(p > 0)) throw std::invalid_argument("make_p_ellipse: need p > 0");
  CurveModel c;
  c.p = p;
  c.L = c.M = 1;
  const double ip = 1.0 / p;
  c.f = [p, ip](double x) {
    if (x <= 0) return 1.0;
    if (x >= 1) return 0.0;
    return std::pow(1.0 - std::pow(x, p), ip);
  };
  c.g = c.f;  // symmetric
  c.f1 = [p, ip](double x) {
    return -std::pow(x, p - 1) * std::pow(1.0 - std::pow(x, p), ip - 1);
  };
  c.f2 = [p, ip](double x) {
    return (1.0 - p) * std::pow(x, p - 2) *
           std::pow(1.0 - std::pow(x, p), ip - 2);
  };
  c.g1 = c.f1;
  c.g2 = c.f2;
  // Area of the unit p-ellipse quadrant in closed form.
  c.area = std::tgamma(1 + ip) * std::tgamma(1 + ip) / std::tgamma(1 + 2 * ip);
  if (p < 1) {
    c.has_hypothesis = true;
    c.alpha = c.beta = std::pow(2.0, -ip);
    c.alpha_partition = {c.alpha, 1.0};
    if (p > 0.5) {
      // f''' has a single zero between alpha and 1
      const double a1 = std::pow((2.0 - p) / (1.0 + p), ip);
      c.alpha_partition = {c.alpha, a1, 1.0};
    }
    c.beta_partition = c.alpha_partition;
    const double cap = 0.5 * (0.5 - c.alpha);  // strictly inside (0, L/2 - alpha)
    c.delta_fn = [p, cap](double r) { return std::min(std::pow(r, -p), cap); };
    c.epsilon_fn = c.delta_fn;
    const double half = 0.5 * p;
    c.exponents = {half, half, half, half, std::min(1.0 / 6.0, half)};
  }
  return c;
}

inline QuadResult area_of_curve(const CurveModel& c) {
  // f' may blow up at either intercept, so refine geometrically toward both
  return integrate_singular(c.f, 0.0, c.L, true, true, 1e-9);
}

// (int_alpha^L f''^{1/3}, int_beta^M g''^{1/3}); the integrands blow up at
// the right endpoints but stay integrable
inline std::pair<double, double> curvature_integral(const CurveModel& c) {
  if (!c.has_hypothesis)
    throw std::domain_error("curvature_integral: curve has no convex-hypothesis data");
  if (c.curvature_cache) return *c.curvature_cache;
  auto cbrt_pos = [](double v) {
    if (v < 0) throw std::runtime_error("curvature_integral: negative second derivative sample");
    return std::cbrt(v);
  };
  auto fi = integrate_singular([&](double x) { return cbrt_pos(c.f2(x)); },
                               c.alpha, c.L, false, true, 1e-9);
  auto gi = integrate_singular([&](double y) { return cbrt_pos(c.g2(y)); },
                               c.beta, c.M, false, true, 1e-9);
  c.curvature_cache =
      std::make_shared<std::pair<double, double>>(fi.value, gi.value);
  return *c.curvature_cache;
}

}  // namespace optstretch
