#pragma once
// Dirichlet spectra of the rectangles R(s) = (0, pi/s) x (0, s pi), whose
// eigenvalues are (js)^2 + (k/s)^2, and the product-domain surrogate where
// the exponent drops to p = 2/d. Eigenvalues are resolved exactly as pair
// values, so every consistency check against the counting module is sharp.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "optstretch/counting.hpp"
#include "optstretch/optimize.hpp"

namespace optstretch {

struct RectangleSpectrumQuery {
  double s = 1;      // R(s) has area pi^2 for every s
  long long n = 1;
};

struct ProductDomainQuery {
  int d = 3;         // factor dimension; the surrogate exponent is p = 2/d
  double s = 1;
  long long n = 1;
};

namespace detail {

// every value (jS)^p + (k/S)^p <= hi, j,k >= 1
inline void pair_values_below(double p, double S, double hi,
                              std::vector<double>& vals) {
  vals.clear();
  const double k1 = std::pow(1.0 / S, p);
  for (long long j = 1;; ++j) {
    const double base = std::pow(j * S, p);
    if (base + k1 > hi) break;
    for (long long k = 1;; ++k) {
      const double v = base + std::pow(k / S, p);
      if (v > hi) break;
      vals.push_back(v);
    }
  }
}

// n-th smallest branch value at aspect S >= 1 for exponent p
inline double nth_pair_value(double p, double S, long long n) {
  // continuous-count guess r^2 A - r(1/S + S)/2 ~ n, then doubling to be sure
  const double A = std::tgamma(1 + 1.0 / p) * std::tgamma(1 + 1.0 / p) /
                   std::tgamma(1 + 2.0 / p);
  const double pad = (double)n + 4 * std::sqrt((double)n) + 16;
  const double B = (1.0 / S + S) / 2;
  const double rguess = (B / 2 + std::sqrt(B * B / 4 + 4 * A * pad)) / (2 * A);
  double hi = std::max(std::pow(rguess, p),
                       std::pow(S, p) + std::pow(1.0 / S, p));
  std::vector<double> vals;
  for (int round = 0; round < 200; ++round) {
    pair_values_below(p, S, hi, vals);
    if ((long long)vals.size() >= n) {
      std::nth_element(vals.begin(), vals.begin() + (n - 1), vals.end());
      return vals[n - 1];
    }
    hi *= 2;
  }
  throw std::runtime_error("nth_pair_value: threshold doubling failed");
}

}  // namespace detail

// #{n : lambda_n(R(s)) <= lambda}, through the p = 2 count
inline long long eigenvalue_count(double s, double lambda,
                                  const MembershipPolicy& pol = {}) {
  if (!(s > 0) || !(lambda > 0))
    throw std::invalid_argument("eigenvalue_count: need s, lambda > 0");
  static const CurveModel circle = make_p_ellipse(2);
  return count_interior(circle, std::sqrt(lambda), s, pol);
}

inline double rectangle_eigenvalue(double s, long long n) {
  if (!(s > 0) || n < 1)
    throw std::invalid_argument("rectangle_eigenvalue: need s > 0, n >= 1");
  return detail::nth_pair_value(2.0, std::max(s, 1.0 / s), n);
}

inline double rectangle_eigenvalue(const RectangleSpectrumQuery& q) {
  return rectangle_eigenvalue(q.s, q.n);
}

// first-order Weyl surrogate s^{2/d} j^{2/d} + s^{-2/d} k^{2/d}; these are
// approximate eigenvalues only, and reports should say so
inline double product_eigenvalue(int d, double s, long long n) {
  if (d < 2) throw std::invalid_argument("product_eigenvalue: need d >= 2");
  if (!(s > 0) || n < 1)
    throw std::invalid_argument("product_eigenvalue: need s > 0, n >= 1");
  return detail::nth_pair_value(2.0 / d, std::max(s, 1.0 / s), n);
}

inline double product_eigenvalue(const ProductDomainQuery& q) {
  return product_eigenvalue(q.d, q.s, q.n);
}

struct AspectReport {
  double s_star = 1;
  double lambda_star = 0;
  double flat_lo = 1, flat_hi = 1;  // argmin component around s_star
  bool approximate = false;         // product surrogate, not true eigenvalues
};

enum class SpectrumMode { Rectangle, Product };

// s_n: minimize lambda_n over s. Log-grid localization, golden refinement,
// then a scan of branch vertices s = sqrt(k/j) near the basin (the minimum
// of a single branch sits there, and crossings snap to exact pair data).
inline AspectReport minimizing_aspect(long long n,
                                      SpectrumMode mode = SpectrumMode::Rectangle,
                                      int d = 3) {
  if (n < 1) throw std::invalid_argument("minimizing_aspect: need n >= 1");
  if (mode == SpectrumMode::Product && d < 3)
    throw std::invalid_argument("minimizing_aspect: product mode needs d >= 3");
  const double p = mode == SpectrumMode::Rectangle ? 2.0 : 2.0 / d;
  auto ev = [&](double s) { return detail::nth_pair_value(p, std::max(s, 1 / s), n); };

  const double s_hi = std::sqrt(2.0 * n), s_lo = 1 / s_hi;
  const double llo = std::log(s_lo), lhi = std::log(s_hi);
  const int cells = 400;
  int best_cell = 0;
  double best_s = s_lo, best_v = ev(s_lo);
  for (int i = 1; i <= cells; ++i) {
    const double s = std::exp(llo + (lhi - llo) * i / cells);
    const double v = ev(s);
    if (v < best_v) {
      best_v = v;
      best_s = s;
      best_cell = i;
    }
  }
  if (best_cell == 0 || best_cell == cells)
    throw std::runtime_error("minimizing_aspect: minimum ran into the bracket edge");
  const double cell_w = (lhi - llo) / cells;
  // the profile kinks at branch crossings well below the coarse cell width,
  // so localize twice more before polishing with golden section
  double wlo = llo + (best_cell - 1) * cell_w;
  double whi = llo + (best_cell + 1) * cell_w;
  for (int level = 0; level < 2; ++level) {
    const int micro = 400;
    double mbt = std::log(best_s), mbv = best_v;
    for (int i = 0; i <= micro; ++i) {
      const double t = wlo + (whi - wlo) * i / micro;
      const double v = ev(std::exp(t));
      if (v < mbv) {
        mbv = v;
        mbt = t;
      }
    }
    best_v = mbv;
    best_s = std::exp(mbt);
    const double mw = (whi - wlo) / micro;
    auto [gs, gv] = golden_min([&](double t) { return ev(std::exp(t)); },
                               mbt - mw, mbt + mw, 1e-8);
    if (gv < best_v) {
      best_v = gv;
      best_s = std::exp(gs);
    }
    wlo = mbt - mw;
    whi = mbt + mw;
  }
  // branch vertices within a couple of grid cells of the basin
  const double win_lo = best_s * std::exp(-2 * cell_w);
  const double win_hi = best_s * std::exp(2 * cell_w);
  for (long long j = 1; std::pow(j * best_s, p) <= best_v; ++j) {
    const double k_mid = j * best_s * best_s;
    for (long long k = std::max(1LL, (long long)(k_mid * 0.8) - 2);
         k <= (long long)(k_mid * 1.25) + 2; ++k) {
      const double sc = std::sqrt((double)k / j);
      if (sc < win_lo || sc > win_hi) continue;
      const double v = ev(sc);
      if (v <= best_v) {
        best_v = v;
        best_s = sc;
      }
    }
  }

  // the mirror 1/s* minimizes too (lambda_n(s) = lambda_n(1/s)); report the
  // side nearer 1 so distances to the square are canonical
  if (best_s > 1) best_s = 1 / best_s;

  AspectReport rep;
  rep.approximate = mode == SpectrumMode::Product;
  rep.lambda_star = best_v;
  rep.s_star = best_s;
  // component of {lambda_n = lambda*} around the argmin, by doubling probes
  auto at_min = [&](double s) { return ev(s) <= best_v * (1 + 1e-12); };
  auto expand = [&](int dir) {
    double h = 1e-9 * best_s;
    double good = best_s;
    const double edge = dir > 0 ? s_hi : s_lo;
    for (int it = 0; it < 80; ++it) {
      const double probe = best_s + dir * h;
      if (dir > 0 ? probe >= edge : probe <= edge) break;
      if (!at_min(probe)) break;
      good = probe;
      h *= 2;
    }
    // good is inside the flat set; good + dir*h/... first failure sits in
    // (good, good + dir*h*...); a short bisection sharpens it
    double bad = best_s + dir * 2 * h;
    if ((dir > 0 && bad > edge) || (dir < 0 && bad < edge)) bad = edge;
    for (int it = 0; it < 50 && std::abs(bad - good) > 1e-10 * best_s; ++it) {
      const double mid = 0.5 * (good + bad);
      if (at_min(mid)) good = mid;
      else bad = mid;
    }
    return good;
  };
  rep.flat_lo = expand(-1);
  rep.flat_hi = expand(+1);
  if (rep.flat_hi - rep.flat_lo > 1e-4 * best_s) {
    // genuinely flat: report the midpoint, per the set-valued convention
    rep.s_star = 0.5 * (rep.flat_lo + rep.flat_hi);
    rep.lambda_star = ev(rep.s_star);
  }
  return rep;
}

}  // namespace optstretch
