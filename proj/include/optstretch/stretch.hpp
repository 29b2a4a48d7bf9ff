#pragma once
// Exact optimal-stretch sets via event enumeration in s. For the p-ellipse
// the membership of a fixed (j,k) is unimodal in s, so each point is inside
// r*Gamma(s) on a single closed interval [s_lo, s_hi]; the maximizing set of
// the interior count and the minimizing set of the closed count then fall
// out of sorted endpoint sweeps.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "optstretch/counting.hpp"
#include "optstretch/optimize.hpp"

namespace optstretch {

struct StretchWindow {
  long long j = 0, k = 0;
  double s_lo = 0, s_hi = 0;
};

struct SInterval {
  double lo = 0, hi = 0;
  bool lo_open = false, hi_open = false;
};

struct OptimumReport {
  enum class Mode { MaxInterior, MinClosed };
  double r = 0;
  Mode mode = Mode::MaxInterior;
  long long best_count = 0;
  std::vector<SInterval> optimizer;  // sorted, disjoint
  double dist_to_one = 0;            // sup over the optimizer of |s - 1|
  double witness_s = 1;
  bool no_lattice_point = false;     // max mode with an empty curve
  bool heuristic = false;            // generic-curve fallback path
};

struct SweepRecord {
  double r = 0;
  double dist_to_one = 0;
  long long best_count = 0;
  double predicted_count = 0;
  double residual = 0;
  double bracket_lo = 0, bracket_hi = 0;
  bool failed = false;
};

namespace detail {

// relative merge tolerance for event coordinates
inline constexpr double kEventTol = 1e-12;

inline bool same_coord(double a, double b) {
  return std::abs(a - b) <= kEventTol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace detail

// All (j,k) whose window is nonempty: the minimum over s of
// (js)^p + (k/s)^p is 2(jk)^{p/2}, attained at s = sqrt(k/j), so the window
// exists iff that minimum clears the threshold. Endpoints solve the
// quadratic in u = s^p; both roots are taken in cancellation-free form and
// then pulled inward a hair so the shared membership predicate accepts the
// endpoints themselves.
inline std::vector<StretchWindow> enumerate_windows(
    const CurveModel& c, double r, const MembershipPolicy& pol = {}) {
  if (!(c.p > 0))
    throw std::domain_error("enumerate_windows: exact windows need the p-ellipse family");
  detail::check_rs(r, 1);
  detail::check_policy(pol);
  const double p = c.p, ip = 1.0 / p;
  const double T = pellipse_threshold(c, r, pol);
  std::vector<StretchWindow> out;
  for (long long j = 1;; ++j) {
    bool any = false;
    for (long long k = 1;; ++k) {
      const double vmin = 2 * std::pow((double)j * k, 0.5 * p);
      if (vmin > T) break;
      any = true;
      const double jps = std::pow((double)j, p);
      const double kp = std::pow((double)k, p);
      const double sq = std::sqrt(std::max(0.0, T * T - 4 * jps * kp));
      const double u_hi = (T + sq) / (2 * jps);
      const double u_lo = 2 * kp / (T + sq);
      double lo = std::pow(u_lo, ip) * (1 + 1e-13);
      double hi = std::pow(u_hi, ip) * (1 - 1e-13);
      if (lo > hi)  // tangent window collapses to its vertex
        lo = hi = std::sqrt((double)k / (double)j);
      out.push_back({j, k, lo, hi});
    }
    if (!any) break;  // k = 1 already failed, so every larger j fails too
  }
  return out;
}

namespace detail {

struct EventGroup {
  double coord = 0;
  long long opens = 0, closes = 0, drops = 0, rises = 0;
};

// merge raw (coord, slot) events into tolerance-grouped coordinates;
// slot: 0 = open, 1 = close, 2 = drop, 3 = rise
inline std::vector<EventGroup> group_events(
    std::vector<std::pair<double, int>>& raw) {
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<EventGroup> groups;
  for (const auto& [x, slot] : raw) {
    if (groups.empty() || !same_coord(groups.back().coord, x)) {
      groups.push_back({x, 0, 0, 0, 0});
    }
    auto& g = groups.back();
    if (slot == 0) ++g.opens;
    else if (slot == 1) ++g.closes;
    else if (slot == 2) ++g.drops;
    else ++g.rises;
  }
  return groups;
}

inline double sup_dist_to_one(const std::vector<SInterval>& iv) {
  double d = 0;
  for (const auto& i : iv)
    d = std::max({d, std::abs(i.lo - 1), std::abs(i.hi - 1)});
  return d;
}

// point of the optimizer nearest to s = 1 (endpoints are fair game for
// closed intervals; open intervals give up a hair of interior room)
inline double pick_witness(const std::vector<SInterval>& iv, bool open_mode) {
  double best = 0, bestd = 1e300;
  for (const auto& i : iv) {
    double cand;
    if (1 > i.lo && 1 < i.hi) cand = 1;
    else if (!open_mode) cand = std::abs(i.lo - 1) < std::abs(i.hi - 1) ? i.lo : i.hi;
    else cand = std::sqrt(i.lo * i.hi);  // strictly interior
    const double d = std::abs(cand - 1);
    if (d < bestd) {
      bestd = d;
      best = cand;
    }
  }
  return best;
}

OptimumReport arg_opt_generic(const CurveModel& c, double r,
                              OptimumReport::Mode mode,
                              const MembershipPolicy& pol);

}  // namespace detail

// S(r): the s-values maximizing the interior count, as a union of closed
// intervals, from a sorted sweep of window endpoints.
inline OptimumReport argmax_interior(const CurveModel& c, double r,
                                     const MembershipPolicy& pol = {}) {
  if (!(c.p > 0)) return detail::arg_opt_generic(c, r, OptimumReport::Mode::MaxInterior, pol);
  OptimumReport rep;
  rep.r = r;
  rep.mode = OptimumReport::Mode::MaxInterior;
  auto wins = enumerate_windows(c, r, pol);
  if (wins.empty()) {
    rep.no_lattice_point = true;
    rep.best_count = 0;
    rep.dist_to_one = std::nan("");
    rep.witness_s = std::nan("");
    return rep;
  }
  std::vector<std::pair<double, int>> raw;
  raw.reserve(2 * wins.size());
  for (const auto& w : wins) {
    raw.push_back({w.s_lo, 0});
    raw.push_back({w.s_hi, 1});
  }
  auto groups = detail::group_events(raw);
  // depth AT a coordinate counts opens up to and including it, closes before
  // it; depth after subtracts its closes
  long long depth_before = 0, dmax = 0;
  std::vector<std::pair<long long, long long>> at_after(groups.size());
  for (size_t i = 0; i < groups.size(); ++i) {
    const long long at = depth_before + groups[i].opens;
    const long long after = at - groups[i].closes;
    at_after[i] = {at, after};
    dmax = std::max(dmax, at);
    depth_before = after;
  }
  rep.best_count = dmax;
  for (size_t i = 0; i < groups.size(); ++i) {
    if (at_after[i].first != dmax) continue;
    size_t jx = i;
    while (jx < groups.size() && at_after[jx].first == dmax &&
           (jx == i || at_after[jx - 1].second == dmax))
      ++jx;
    // run spans coords [i, jx)
    rep.optimizer.push_back({groups[i].coord, groups[jx - 1].coord});
    i = jx - 1;
  }
  rep.dist_to_one = detail::sup_dist_to_one(rep.optimizer);
  rep.witness_s = detail::pick_witness(rep.optimizer, false);
  return rep;
}

// script-S(r): the s-values minimizing the closed count. Interior windows
// contribute open/close events; the axis counts contribute drop events at
// s = rx/m (x-axis point m leaves as s grows) and rise events at s = m/ry
// (y-axis point m enters). Between consecutive events the count is constant,
// so one directly-counted anchor pins the whole profile.
inline OptimumReport argmin_closed(const CurveModel& c, double r,
                                   const MembershipPolicy& pol = {}) {
  if (!(c.p > 0)) return detail::arg_opt_generic(c, r, OptimumReport::Mode::MinClosed, pol);
  OptimumReport rep;
  rep.r = r;
  rep.mode = OptimumReport::Mode::MinClosed;
  const double ip = 1.0 / c.p;
  const double T = pellipse_threshold(c, r, pol);
  const double rx = std::pow(T, ip);  // axis reach: x-axis count is #{m : m <= rx/s}
  const double ry = rx;
  const long long B = count_closed(c, r, 1, pol);
  // outside (s_left, s_right) an axis alone already beats B >= min
  const double s_left = rx / (B + 1);
  const double s_right = (B + 1) / ry;
  auto inside = [&](double x) { return x > s_left && x < s_right; };

  std::vector<std::pair<double, int>> raw;
  auto wins = enumerate_windows(c, r, pol);
  for (const auto& w : wins) {
    if (w.s_hi <= s_left || w.s_lo >= s_right) continue;
    if (inside(w.s_lo)) raw.push_back({w.s_lo, 0});
    if (inside(w.s_hi)) raw.push_back({w.s_hi, 1});
  }
  for (long long m = 1; rx / m > s_left; ++m)
    if (inside(rx / m)) raw.push_back({rx / m, 2});
  for (long long m = 1; m / ry < s_right; ++m)
    if (inside(m / ry)) raw.push_back({m / ry, 3});

  auto groups = detail::group_events(raw);
  if (groups.empty()) {
    rep.best_count = count_closed(c, r, std::sqrt(s_left * s_right), pol);
    rep.optimizer.push_back({s_left, s_right, true, true});
    rep.dist_to_one = detail::sup_dist_to_one(rep.optimizer);
    rep.witness_s = detail::pick_witness(rep.optimizer, true);
    return rep;
  }
  // value on the open gap before each coordinate; anchor the first gap by a
  // direct count, then roll the deltas forward
  const size_t ngaps = groups.size() + 1;
  std::vector<long long> gap_value(ngaps);
  gap_value[0] = count_closed(c, r, std::sqrt(s_left * groups[0].coord), pol);
  for (size_t i = 0; i < groups.size(); ++i)
    gap_value[i + 1] = gap_value[i] + groups[i].opens + groups[i].rises -
                       groups[i].closes - groups[i].drops;
  long long vmin = gap_value[0];
  for (size_t i = 1; i < ngaps; ++i) vmin = std::min(vmin, gap_value[i]);
  rep.best_count = vmin;
  auto gap_bounds = [&](size_t i) -> std::pair<double, double> {
    const double lo = i == 0 ? s_left : groups[i - 1].coord;
    const double hi = i == groups.size() ? s_right : groups[i].coord;
    return {lo, hi};
  };
  for (size_t i = 0; i < ngaps; ++i) {
    if (gap_value[i] != vmin) continue;
    auto [lo, hi] = gap_bounds(i);
    // absorb following min-gaps when the count at the separating coordinate
    // also sits at the minimum
    size_t jx = i;
    while (jx + 1 < ngaps && gap_value[jx + 1] == vmin &&
           count_closed(c, r, groups[jx].coord, pol) == vmin)
      ++jx;
    rep.optimizer.push_back({lo, gap_bounds(jx).second, true, true});
    i = jx;
  }
  rep.dist_to_one = detail::sup_dist_to_one(rep.optimizer);
  rep.witness_s = detail::pick_witness(rep.optimizer, true);
  return rep;
}

namespace detail {

// Generic curves have no exact event structure; fall back to a golden-refined
// grid over the coarse bracket where any lattice point can exist at all, and
// flag the report as heuristic.
inline OptimumReport arg_opt_generic(const CurveModel& c, double r,
                                     OptimumReport::Mode mode,
                                     const MembershipPolicy& pol) {
  OptimumReport rep;
  rep.r = r;
  rep.mode = mode;
  rep.heuristic = true;
  const bool maxing = mode == OptimumReport::Mode::MaxInterior;
  const double lo = 1.0 / (r * c.M), hi = r * c.L;
  const double llo = std::log(lo), lhi = std::log(hi);
  const int cells = 10000;
  long long best = maxing ? -1 : (long long)4e18;
  double best_s = 1;
  for (int i = 0; i <= cells; ++i) {
    const double s = std::exp(llo + (lhi - llo) * i / cells);
    const long long v = maxing ? count_interior(c, r, s, pol)
                               : count_closed(c, r, s, pol);
    const bool better = maxing ? v > best : v < best;
    const bool tie_closer = v == best && std::abs(s - 1) < std::abs(best_s - 1);
    if (better || tie_closer) {
      best = v;
      best_s = s;
    }
  }
  rep.best_count = best;
  if (maxing && best == 0) {
    rep.no_lattice_point = true;
    rep.dist_to_one = std::nan("");
    rep.witness_s = std::nan("");
    return rep;
  }
  rep.optimizer.push_back({best_s, best_s});
  rep.dist_to_one = std::abs(best_s - 1);
  rep.witness_s = best_s;
  return rep;
}

}  // namespace detail

// one row per r: the optimizing set summary plus the two-term prediction
// r^2 Area -/+ rL and the active stretch bracket (filled by the caller via
// the bounds module; NaN when not applicable)
inline std::vector<SweepRecord> sweep(
    const CurveModel& c, OptimumReport::Mode mode,
    const std::vector<double>& r_grid, const MembershipPolicy& pol = {},
    double bracket_threshold = std::nan(""),
    double improved_threshold = std::nan("")) {
  std::vector<SweepRecord> out;
  out.reserve(r_grid.size());
  for (double r : r_grid) {
    SweepRecord rec;
    rec.r = r;
    try {
      OptimumReport rep = mode == OptimumReport::Mode::MaxInterior
                              ? argmax_interior(c, r, pol)
                              : argmin_closed(c, r, pol);
      if (rep.no_lattice_point) {
        rec.failed = true;
        rec.dist_to_one = rec.predicted_count = rec.residual = std::nan("");
      } else {
        rec.best_count = rep.best_count;
        rec.dist_to_one = rep.dist_to_one;
        const double sign = mode == OptimumReport::Mode::MaxInterior ? -1 : 1;
        rec.predicted_count = r * r * c.area + sign * r * c.L;
        rec.residual = (double)rep.best_count - rec.predicted_count;
      }
    } catch (const std::exception&) {
      rec.failed = true;
      rec.dist_to_one = rec.predicted_count = rec.residual = std::nan("");
    }
    if (!std::isnan(improved_threshold) && r >= improved_threshold) {
      rec.bracket_lo = 2.0 / (r * c.M);
      rec.bracket_hi = r * c.L / 2;
    } else if (!std::isnan(bracket_threshold) && r >= bracket_threshold) {
      rec.bracket_lo = 1.0 / (r * c.M);
      rec.bracket_hi = r * c.L;
    } else {
      rec.bracket_lo = rec.bracket_hi = std::nan("");
    }
    out.push_back(rec);
  }
  return out;
}

struct DecayFit {
  double exponent_estimate = 0;  // least-squares slope of log dist vs log r
  double envelope_constant = 0;  // smallest K with dist <= K r^{-e}
};

inline DecayFit fit_decay(const std::vector<SweepRecord>& records, double e) {
  std::vector<std::pair<double, double>> pts;
  bool any_positive = false;
  for (const auto& rec : records) {
    if (rec.failed || std::isnan(rec.dist_to_one)) continue;
    if (rec.dist_to_one > 0) {
      any_positive = true;
      pts.push_back({std::log(rec.r), std::log(rec.dist_to_one)});
    }
  }
  if (!any_positive)
    throw std::domain_error("fit_decay: already balanced (every distance is zero)");
  if (pts.size() < 10)
    throw std::invalid_argument("fit_decay: need at least 10 records with positive distance");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = (double)pts.size();
  DecayFit fit;
  fit.exponent_estimate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  for (const auto& rec : records) {
    if (rec.failed || std::isnan(rec.dist_to_one)) continue;
    fit.envelope_constant =
        std::max(fit.envelope_constant, rec.dist_to_one * std::pow(rec.r, e));
  }
  return fit;
}

}  // namespace optstretch
