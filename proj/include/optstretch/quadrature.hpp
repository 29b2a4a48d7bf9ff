#pragma once
// Adaptive Gauss-Kronrod (G7K15) integration with optional geometric
// refinement toward an endpoint with an integrable singularity.

#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

namespace optstretch {

namespace detail {

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights on the odd-indexed nodes.
inline constexpr double kron_x[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double kron_w[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double gauss_w[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

inline Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double resk = kron_w[7] * f(c);
  double resg = gauss_w[3] * f(c);
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kron_x[i];
    const double fsum = f(c - dx) + f(c + dx);
    resk += kron_w[i] * fsum;
    if (i % 2 == 1) resg += gauss_w[i / 2] * fsum;
  }
  const double value = resk * h;
  double err = std::abs((resk - resg) * h);
  // sharpen the raw difference as in QUADPACK
  if (err > 0) err = std::pow(200.0 * err, 1.5);
  if (!std::isfinite(err) || err > std::abs(value) + 1) err = std::abs((resk - resg) * h);
  return {a, b, value, err};
}

}  // namespace detail

struct QuadResult {
  double value = 0;
  double error = 0;
  long panels = 0;
};

// Adaptive bisection: keep splitting the worst panel until the summed error
// estimate drops below rel_tol * |integral| (or abs_tol), within the panel
// budget.
inline QuadResult integrate(const std::function<double(double)>& f, double a,
                            double b, double rel_tol = 1e-10,
                            double abs_tol = 1e-14, long budget = 100000) {
  using detail::Panel;
  if (!(a < b)) return {0, 0, 0};
  std::priority_queue<Panel> q;
  q.push(detail::gk15(f, a, b));
  double total = q.top().value, toterr = q.top().error;
  long used = 1;
  while (toterr > std::max(abs_tol, rel_tol * std::abs(total)) && used < budget) {
    Panel worst = q.top();
    q.pop();
    if (worst.b - worst.a < 1e-15 * std::max(1.0, std::abs(worst.a))) {
      // panel too thin to split further; accept its estimate
      q.push({worst.a, worst.b, worst.value, 0.0});
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = detail::gk15(f, worst.a, mid);
    Panel right = detail::gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    toterr += left.error + right.error - worst.error;
    q.push(left);
    q.push(right);
    ++used;
  }
  if (toterr > std::max(abs_tol, rel_tol * std::abs(total)) * 10 + 1e-12)
    throw std::runtime_error("integrate: failed to converge within panel budget");
  return {total, toterr, used};
}

// Integrate with an integrable blowup allowed at either endpoint: the
// interval is pre-split geometrically toward each flagged endpoint, so the
// adaptive kernel only ever sees the singularity through vanishing panels.
inline QuadResult integrate_singular(const std::function<double(double)>& f,
                                     double a, double b, bool sing_lo,
                                     bool sing_hi, double rel_tol = 1e-10,
                                     long budget = 100000) {
  if (!(a < b)) return {0, 0, 0};
  const double w = b - a;
  std::vector<std::pair<double, double>> pieces;
  double lo = a, hi = b;
  if (sing_lo && sing_hi) {
    lo = a + 0.25 * w;
    hi = b - 0.25 * w;
  } else if (sing_lo) {
    lo = a + 0.5 * w;
    hi = b;
  } else if (sing_hi) {
    lo = a;
    hi = b - 0.5 * w;
  }
  if (lo < hi) pieces.push_back({lo, hi});
  // geometric ladders: halve the gap to the singular endpoint each step
  double gap = lo - a;
  while (sing_lo && gap > 1e-14 * std::max(1.0, std::abs(a))) {
    pieces.push_back({a + 0.5 * gap, a + gap});
    gap *= 0.5;
  }
  gap = b - hi;
  while (sing_hi && gap > 1e-14 * std::max(1.0, std::abs(b))) {
    pieces.push_back({b - gap, b - 0.5 * gap});
    gap *= 0.5;
  }
  QuadResult out;
  for (const auto& [pa, pb] : pieces) {
    QuadResult part = integrate(f, pa, pb, rel_tol, 1e-15, budget);
    out.value += part.value;
    out.error += part.error;
    out.panels += part.panels;
    if (out.panels >= budget)
      throw std::runtime_error("integrate_singular: panel budget exhausted");
  }
  return out;
}

}  // namespace optstretch
