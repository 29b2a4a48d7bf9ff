#pragma once
// Exact lattice point counts for the stretched curve r*Gamma(s): interior
// count N(r,s) over j,k >= 1 and closed-quadrant count over j,k >= 0, plus a
// brute-force oracle and the rectangle complement identity. Every counter
// funnels through one membership predicate so boundary semantics stay
// consistent everywhere.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "optstretch/curve.hpp"

namespace optstretch {

struct MembershipPolicy {
  double tol_rel = 1e-9;  // relative slack for "on the curve" decisions
};

struct LatticePoint {
  long long j = 0, k = 0;
};

namespace detail {

inline void check_rs(double r, double s) {
  if (!(r > 0) || !(s > 0))
    throw std::invalid_argument("counting: need r > 0 and s > 0");
}

inline void check_policy(const MembershipPolicy& pol) {
  if (!(pol.tol_rel >= 0) || pol.tol_rel > 1e-6)
    throw std::invalid_argument("counting: tol_rel must lie in [0, 1e-6]");
}

}  // namespace detail

// Inflated implicit-form threshold for the p-ellipse: (js)^p + (k/s)^p <= T.
inline double pellipse_threshold(const CurveModel& c, double r,
                                 const MembershipPolicy& pol) {
  return std::pow(r, c.p) * (1.0 + pol.tol_rel);
}

// Shared predicate: is (j,k) inside or on r*Gamma(s)? Accepts j = 0 or k = 0
// so the same test serves axis and closed-quadrant counts.
inline bool member(const CurveModel& c, double r, double s, long long j,
                   long long k, const MembershipPolicy& pol) {
  if (c.p > 0) {
    const double T = pellipse_threshold(c, r, pol);
    const double vx = j == 0 ? 0.0 : std::pow(j * s, c.p);
    const double vy = k == 0 ? 0.0 : std::pow(k / s, c.p);
    return vx + vy <= T;
  }
  const double x = j * s / r;
  if (x > c.L * (1 + pol.tol_rel)) return false;
  const double y = r * s * c.f(std::min(x, c.L));
  return k <= y + pol.tol_rel * std::max(1.0, y);
}

// Largest m >= 1 with (m, 0) inside, i.e. points on the positive x-axis.
inline long long axis_count_x(const CurveModel& c, double r, double s,
                              const MembershipPolicy& pol) {
  detail::check_rs(r, s);
  detail::check_policy(pol);
  double est;
  if (c.p > 0)
    est = std::pow(pellipse_threshold(c, r, pol), 1.0 / c.p) / s;
  else
    est = r * c.L / s * (1 + pol.tol_rel);
  long long m = est > 0 ? (long long)std::floor(est) : 0;
  while (member(c, r, s, m + 1, 0, pol)) ++m;
  while (m >= 1 && !member(c, r, s, m, 0, pol)) --m;
  return m;
}

inline long long axis_count_y(const CurveModel& c, double r, double s,
                              const MembershipPolicy& pol) {
  detail::check_rs(r, s);
  detail::check_policy(pol);
  double est;
  if (c.p > 0)
    est = std::pow(pellipse_threshold(c, r, pol), 1.0 / c.p) * s;
  else
    est = r * s * c.M * (1 + pol.tol_rel);
  long long m = est > 0 ? (long long)std::floor(est) : 0;
  while (member(c, r, s, 0, m + 1, pol)) ++m;
  while (m >= 1 && !member(c, r, s, 0, m, pol)) --m;
  return m;
}

// N(r,s): column sum over j with a closed-form seed for the top of each
// column, corrected through the shared predicate.
inline long long count_interior(const CurveModel& c, double r, double s,
                                const MembershipPolicy& pol = {}) {
  detail::check_rs(r, s);
  detail::check_policy(pol);
  const long long jmax = axis_count_x(c, r, s, pol) + 1;
  long long total = 0;
  if (c.p > 0) {
    const double T = pellipse_threshold(c, r, pol);
    const double ip = 1.0 / c.p;
    for (long long j = 1; j <= jmax; ++j) {
      if (!member(c, r, s, j, 1, pol)) break;  // columns only shrink with j
      const double rem = T - std::pow(j * s, c.p);
      long long k = (long long)std::floor(std::pow(rem, ip) * s);
      while (member(c, r, s, j, k + 1, pol)) ++k;
      while (k >= 1 && !member(c, r, s, j, k, pol)) --k;
      total += k;
    }
    return total;
  }
  for (long long j = 1; j <= jmax; ++j) {
    const double x = j * s / r;
    if (x > c.L * (1 + pol.tol_rel)) break;
    const double y = r * s * c.f(std::min(x, c.L));
    long long k = (long long)std::floor(y + pol.tol_rel * std::max(1.0, y));
    while (member(c, r, s, j, k + 1, pol)) ++k;
    while (k >= 1 && !member(c, r, s, j, k, pol)) --k;
    total += k;
  }
  return total;
}

// Closed-quadrant count: interior plus the two axes plus the origin.
inline long long count_closed(const CurveModel& c, double r, double s,
                              const MembershipPolicy& pol = {}) {
  return count_interior(c, r, s, pol) + axis_count_x(c, r, s, pol) +
         axis_count_y(c, r, s, pol) + 1;
}

// Definitionally correct double loop; guarded against quadratic blowup.
inline long long brute_force_count(const CurveModel& c, double r, double s,
                                   bool closed,
                                   const MembershipPolicy& pol = {}) {
  detail::check_rs(r, s);
  detail::check_policy(pol);
  if (r * std::max(s, 1.0 / s) * std::max(c.L, c.M) > 1e4)
    throw std::invalid_argument("brute_force_count: input beyond size guard");
  const long long lo = closed ? 0 : 1;
  const long long jcap = axis_count_x(c, r, s, pol) + 2;
  const long long kcap = axis_count_y(c, r, s, pol) + 2;
  long long total = 0;
  for (long long j = lo; j <= jcap; ++j)
    for (long long k = lo; k <= kcap; ++k)
      if (member(c, r, s, j, k, pol)) ++total;
  return total;
}

// Rectangle complement identity: in general position,
//   floor(L_rs) * floor(M_rs) = N + Ntilde + floor(Lt) + floor(Mt) + 1,
// where Ntilde counts the positive lattice points of the reflected system
// (strictly above the curve, strictly inside the rectangle) and Lt, Mt are
// the complement widths. Degenerate layouts are reported, not asserted.
struct ComplementReport {
  bool degenerate = false;
  bool pass = false;
  long long lhs = 0, rhs = 0;
  long long N = 0, N_tilde = 0;
  long long floor_Lt = 0, floor_Mt = 0;
  double L_rs = 0, M_rs = 0;
};

inline ComplementReport complement_identity_check(
    const CurveModel& c, double r, double s, const MembershipPolicy& pol = {}) {
  detail::check_rs(r, s);
  detail::check_policy(pol);
  ComplementReport rep;
  rep.L_rs = r * c.L / s;
  rep.M_rs = r * s * c.M;
  const long long fl = (long long)std::floor(rep.L_rs);
  const long long fm = (long long)std::floor(rep.M_rs);
  if (fl < 1 || fm < 1 || (double)fl * (double)fm > 4e6) {
    rep.degenerate = true;
    return rep;
  }
  auto near_int = [](double v) {
    return std::abs(v - std::round(v)) <= 1e-9 * std::max(1.0, std::abs(v));
  };
  if (near_int(rep.L_rs) || near_int(rep.M_rs)) {
    rep.degenerate = true;
    return rep;
  }
  // curve height over x = fl and width over y = fm (curve coordinates)
  const double xc = fl * s / r;
  const double yfl = xc >= c.L ? 0.0 : r * s * c.f(xc);
  const double yc = fm / (r * s);
  const double xfm = yc >= c.M ? 0.0 : r * c.g(yc) / s;
  if (near_int(yfl) || near_int(xfm)) {
    rep.degenerate = true;
    return rep;
  }
  // incidence scan and the reflected-interior count in one pass
  const double T = c.p > 0 ? std::pow(r, c.p) : 0;
  for (long long j = 0; j <= fl; ++j) {
    for (long long k = 0; k <= fm; ++k) {
      if (j == 0 && k == 0) continue;
      bool on_curve;
      if (c.p > 0) {
        const double v = (j ? std::pow(j * s, c.p) : 0.0) +
                         (k ? std::pow(k / s, c.p) : 0.0);
        on_curve = std::abs(v - T) <= 8 * std::max(pol.tol_rel, 1e-9) * T;
      } else {
        const double x = j * s / r;
        const double y = x >= c.L ? 0.0 : r * s * c.f(x);
        on_curve = std::abs((double)k - y) <= 8 * std::max(pol.tol_rel, 1e-9) *
                                                  std::max(1.0, y);
      }
      if (on_curve) {
        rep.degenerate = true;
        return rep;
      }
      if (j >= 1 && j <= fl - 1 && k >= 1 && k <= fm - 1 &&
          !member(c, r, s, j, k, pol))
        ++rep.N_tilde;
    }
  }
  rep.N = count_interior(c, r, s, pol);
  rep.floor_Lt = (long long)std::floor(fl - xfm);
  rep.floor_Mt = (long long)std::floor(fm - yfl);
  rep.lhs = fl * fm;
  rep.rhs = rep.N + rep.N_tilde + rep.floor_Lt + rep.floor_Mt + 1;
  rep.pass = rep.lhs == rep.rhs;
  return rep;
}

}  // namespace optstretch
